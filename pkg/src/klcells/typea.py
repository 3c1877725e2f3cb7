"""The type A dictionary: partitions, parabolic anchors, RSK, fusion data.

Two-sided cells of the (extended) affine symmetric group on n strands are
indexed by partitions of n.  The cell of a partition contains the longest
element of the standard parabolic whose blocks are the parts, that element
is a Duflo involution, its length is the a-value sum(binom(part, 2)), and
the number of left cells is n!/(mu_1! ... mu_k!) for mu the dual partition.
This module holds those closed forms plus the representation-theoretic side:
Littlewood-Richardson coefficients by lattice-word enumeration, tensor
decompositions for products of general linear groups (with determinant
twists for weights with negative entries), the backtracking match of a
computed asymptotic multiplication table against such fusion data, and the
Schur-multiplier formula for diagonalizable groups.

RSK row insertion lives here too: it is the ground-truth cell dictionary
for the finite symmetric group, independent of all KL machinery.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from . import coxeter
from .coxeter import Element, longest_parabolic
from .errors import ShapeMismatch, SizeMismatch
from .laurent import LaurentPoly


# ---------------------------------------------------------------------------
# partitions
# ---------------------------------------------------------------------------


def check_partition(lam) -> tuple[int, ...]:
    lam = tuple(int(p) for p in lam)
    if any(p < 1 for p in lam):
        raise SizeMismatch(f"partition parts must be >= 1, got {lam}")
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise SizeMismatch(f"partition parts must be weakly decreasing, got {lam}")
    return lam


def dual_partition(lam) -> tuple[int, ...]:
    """The conjugate (transposed diagram) partition."""
    lam = check_partition(lam)
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > i) for i in range(lam[0]))


def partitions_of(n: int):
    """All partitions of n, in descending lexicographic order."""
    if n == 0:
        yield ()
        return
    def rec(remaining, maxpart):
        if remaining == 0:
            yield ()
            return
        for p in range(min(remaining, maxpart), 0, -1):
            for rest in rec(remaining - p, p):
                yield (p,) + rest
    yield from rec(n, n)


def n_lambda(lam, n: int) -> int:
    """The left-cell count of the two-sided cell of lam: n!/(mu_1!...mu_k!)."""
    lam = check_partition(lam)
    if sum(lam) != n:
        raise SizeMismatch(f"|{lam}| != {n}")
    mu = dual_partition(lam)
    out = math.factorial(n)
    for m in mu:
        out //= math.factorial(m)
    return out


def parabolic_generators(lam, n: int) -> tuple[int, ...]:
    """Generator indices of the block parabolic S_lam (skipping part boundaries)."""
    lam = check_partition(lam)
    if sum(lam) != n:
        raise SizeMismatch(f"|{lam}| != {n}")
    gens = []
    offset = 0
    for part in lam:
        gens.extend(range(offset + 1, offset + part))
        offset += part
    return tuple(gens)


def a_value_closed(lam) -> int:
    """sum(binom(part, 2)) = length of the longest element of S_lam."""
    lam = check_partition(lam)
    return sum(p * (p - 1) // 2 for p in lam)


def parabolic_data(lam, n: int, group=None):
    """(I, w_lam, a) for the block parabolic of lam inside the given group.

    The group defaults to extAffineA n; any type A family of matching rank
    works since the generator indices avoid 0.
    """
    lam = check_partition(lam)
    if sum(lam) != n:
        raise SizeMismatch(f"|{lam}| != {n}")
    if group is None:
        group = coxeter.get_group(coxeter.EXT_AFFINE_A, n)
    I = parabolic_generators(lam, n)
    w = longest_parabolic(group, I)
    a = a_value_closed(lam)
    assert w.length == a
    return I, w, a


def pi_I(g, I) -> LaurentPoly:
    """The balanced Poincare polynomial v^l(w_I) * sum_{w in W_I} v^(-2 l(w))."""
    group = coxeter._as_group(g) if not isinstance(g, coxeter.Group) else g
    if not coxeter.parabolic_is_finite(group, I):
        from .errors import InfiniteParabolic
        raise InfiniteParabolic(f"parabolic on {sorted(set(I))} is infinite")
    I = set(I)
    cyclic = group.family in (coxeter.AFFINE_A, coxeter.EXT_AFFINE_A)
    comps = coxeter._components(I, group.n, cyclic) if I else []
    # Poincare polynomial of the symmetric group on c+1 strands, in q = v^-2
    poly = LaurentPoly.one()
    total_len = 0
    for comp in comps:
        c = len(comp)
        total_len += c * (c + 1) // 2
        for t in range(1, c + 1):
            poly = poly * LaurentPoly({-2 * j: 1 for j in range(t + 1)})
    return poly.shift(total_len)


def canonical_cell_member(w: Element, lam, cd) -> bool:
    """Right descents inside {s_0} and membership in the cell of lam."""
    lam = check_partition(lam)
    if not coxeter.descent_set(w, "right") <= {0}:
        return False
    cls = cd.two_sided_class_of(w)
    if cls is None or cls.partition is None:
        from .errors import TruncationInsufficient
        raise TruncationInsufficient(
            f"two-sided class of {coxeter.format_element(w)} not certified in the ball"
        )
    return cls.partition == lam


# ---------------------------------------------------------------------------
# RSK, the finite-type cell oracle
# ---------------------------------------------------------------------------


def rsk(perm) -> tuple[tuple, tuple]:
    """Row-insertion RSK: one-line permutation -> (P, Q) standard tableaux."""
    P: list[list[int]] = []
    Q: list[list[int]] = []
    for step, value in enumerate(perm, start=1):
        row = 0
        v = value
        while True:
            if row == len(P):
                P.append([v])
                Q.append([step])
                break
            r = P[row]
            pos = None
            for i, x in enumerate(r):
                if x > v:
                    pos = i
                    break
            if pos is None:
                r.append(v)
                Q[row].append(step)
                break
            r[pos], v = v, r[pos]
            row += 1
    return tuple(tuple(r) for r in P), tuple(tuple(r) for r in Q)


def rsk_shape(perm) -> tuple[int, ...]:
    P, _ = rsk(perm)
    return tuple(len(r) for r in P)


def standard_tableaux_count(lam) -> int:
    """Hook length formula."""
    lam = check_partition(lam)
    mu = dual_partition(lam)
    n = sum(lam)
    prod = 1
    for i, p in enumerate(lam):
        for j in range(p):
            prod *= (p - j) + (mu[j] - i) - 1
    return math.factorial(n) // prod


# ---------------------------------------------------------------------------
# Littlewood-Richardson and GL fusion
# ---------------------------------------------------------------------------


def lr_coeff(mu, nu, lam) -> int:
    """c^lam_{mu,nu} by lattice-word enumeration of LR skew tableaux.

    Counts fillings of lam/mu with content nu, rows weakly increasing,
    columns strictly increasing, whose reverse reading word (right to left
    within each row, rows top to bottom) is a lattice word.  Cells are
    filled in exactly that reading order, so the lattice property is a
    local counter check.
    """
    mu, nu, lam = check_partition(mu), check_partition(nu), check_partition(lam)
    if sum(lam) != sum(mu) + sum(nu):
        return 0
    if len(mu) > len(lam) or any(m > l for m, l in zip(mu, lam)):
        return 0
    nrows = len(lam)
    mu_pad = tuple(mu) + (0,) * (nrows - len(mu))
    k_max = len(nu)
    counts = [0] * (k_max + 2)
    grid: dict = {}

    def fill(r: int, c: int) -> int:
        # advance to the next cell in reading order
        while r < nrows and c < mu_pad[r]:
            r += 1
            c = lam[r] - 1 if r < nrows else 0
        if r == nrows:
            return 1
        right = grid.get((r, c + 1))
        hi = right if right is not None else k_max
        above = grid.get((r - 1, c)) if r > 0 and c >= mu_pad[r - 1] else None
        lo = (above + 1) if above is not None else 1
        total = 0
        for k in range(lo, hi + 1):
            if counts[k] >= nu[k - 1]:
                continue
            if k > 1 and counts[k - 1] <= counts[k]:
                continue
            counts[k] += 1
            grid[(r, c)] = k
            if c > mu_pad[r]:
                total += fill(r, c - 1)
            elif r + 1 < nrows:
                total += fill(r + 1, lam[r + 1] - 1)
            else:
                total += 1
            del grid[(r, c)]
            counts[k] -= 1
        return total

    # start at the rightmost cell of the first row holding skew cells
    r0 = 0
    while r0 < nrows and lam[r0] == mu_pad[r0]:
        r0 += 1
    if r0 == nrows:
        return 1 if not nu else 0
    return fill(r0, lam[r0] - 1)


def gl_dimension(weight) -> int:
    """Weyl dimension formula for GL(m) with dominant weight (a_1 >= ... >= a_m)."""
    m = len(weight)
    num = den = 1
    for i in range(m):
        for j in range(i + 1, m):
            num *= weight[i] - weight[j] + j - i
            den *= j - i
    return num // den


def dominant_weight(entries) -> tuple[int, ...]:
    entries = tuple(int(a) for a in entries)
    if any(entries[i] < entries[i + 1] for i in range(len(entries) - 1)):
        raise ShapeMismatch(f"weight {entries} is not dominant")
    return entries


def gl_tensor(a, b) -> dict:
    """Decomposition of L_a (x) L_b for GL(m): {weight: multiplicity}.

    Weights may have negative entries; both are shifted by a power of the
    determinant to partitions, multiplied by Littlewood-Richardson, and
    shifted back.
    """
    a, b = dominant_weight(a), dominant_weight(b)
    if len(a) != len(b):
        raise ShapeMismatch("weights of different GL ranks")
    m = len(a)
    if m == 0:
        return {(): 1}
    ta = -min(a[-1], 0)
    tb = -min(b[-1], 0)
    pa = tuple(x + ta for x in a)
    pb = tuple(x + tb for x in b)
    mu = tuple(p for p in pa if p > 0)
    nu = tuple(p for p in pb if p > 0)
    total = sum(pa) + sum(pb)
    out = {}
    for lam in partitions_of(total):
        if len(lam) > m:
            continue
        c = lr_coeff(mu, nu, lam)
        if c:
            padded = tuple(lam) + (0,) * (m - len(lam))
            out[tuple(x - ta - tb for x in padded)] = c
    return out


@dataclass(frozen=True)
class LeviDescriptor:
    """A product of general linear groups, by factor ranks."""

    ranks: tuple[int, ...]

    def __post_init__(self):
        if any(m < 1 for m in self.ranks):
            raise ShapeMismatch("factor ranks must be >= 1")

    def check_weight(self, weight) -> tuple:
        weight = tuple(tuple(int(x) for x in f) for f in weight)
        if len(weight) != len(self.ranks):
            raise ShapeMismatch(f"expected {len(self.ranks)} factors")
        for f, m in zip(weight, self.ranks):
            if len(f) != m:
                raise ShapeMismatch(f"factor {f} has rank != {m}")
            dominant_weight(f)
        return weight

    def zero_weight(self) -> tuple:
        return tuple((0,) * m for m in self.ranks)

    def dimension(self, weight) -> int:
        out = 1
        for f in self.check_weight(weight):
            out *= gl_dimension(f)
        return out

    def render(self, weight) -> str:
        return "|".join("(" + ",".join(str(x) for x in f) + ")" for f in weight)


def levi_for_partition(lam) -> LeviDescriptor:
    """GL(m_1) x ... x GL(m_k) for mu = dual(lam) = (i_1^{m_1} ... i_k^{m_k})."""
    mu = dual_partition(check_partition(lam))
    ranks = []
    for part, grp in itertools.groupby(mu):
        ranks.append(len(list(grp)))
    return LeviDescriptor(tuple(ranks))


def fusion_tensor(F: LeviDescriptor, x, y) -> dict:
    """Factor-wise tensor decomposition: {weight tuple: multiplicity}."""
    x, y = F.check_weight(x), F.check_weight(y)
    out = {(): 1}
    for fx, fy in zip(x, y):
        piece = gl_tensor(fx, fy)
        nxt = {}
        for pref, c0 in out.items():
            for w, c in piece.items():
                nxt[pref + (w,)] = c0 * c
        out = nxt
    return out


def schur_multiplier_torus(l: int, ds) -> list[int]:
    """Invariant factors of the Schur multiplier of T^l x prod Z/d_i.

    The torus rank l is inert; the answer is the multiset gcd(d_i, d_j)
    over i < j, with trivial factors dropped.
    """
    ds = [int(d) for d in ds]
    if any(d < 2 for d in ds):
        raise SizeMismatch("cyclic factor orders must be >= 2")
    out = []
    for i in range(len(ds)):
        for j in range(i + 1, len(ds)):
            g = math.gcd(ds[i], ds[j])
            if g > 1:
                out.append(g)
    return sorted(out)


# ---------------------------------------------------------------------------
# matching a gamma-table against fusion data
# ---------------------------------------------------------------------------


@dataclass
class FusionMatch:
    assignment: dict  # Element -> weight tuple
    checked_rows: int

    def render(self, F: LeviDescriptor) -> list[str]:
        out = []
        for x in sorted(self.assignment, key=lambda e: (e.length, e.form)):
            out.append(f"{coxeter.format_element(x)} -> {F.render(self.assignment[x])}")
        return out


def fusion_match(table, F: LeviDescriptor, weight_bound: int = 12):
    """Search for an injection of table elements into dominant F-weights.

    The unit goes to the zero weight; every complete row (x, y) must then
    decompose exactly as fusion_tensor(phi(x), phi(y)).  Candidate weights
    come from a bounded pool (entries in [-weight_bound, weight_bound]);
    complete diagonal rows prefilter each element's candidates, since the
    multiplicity sum and support size of t_x * t_x are assignment-free
    invariants of the target fusion square.  Elements touching no complete
    row are left out of the injection (the match is allowed to be partial).
    Returns a FusionMatch or None when the pool is exhausted.
    """
    unit = table.unit
    rows = {
        pair: row
        for pair, row in table.rows.items()
        if table.complete.get(pair, False)
    }
    if not rows:
        from .errors import TruncationInsufficient
        raise TruncationInsufficient("no certified-complete rows to match against")

    domain: set = set()
    for (x, y), row in rows.items():
        domain.add(x)
        domain.add(y)
        domain.update(row)
    if unit is not None:
        domain.add(unit)

    def factor_weights(m: int):
        rng = range(weight_bound, -weight_bound - 1, -1)
        return [w for w in itertools.product(rng, repeat=m)
                if all(w[i] >= w[i + 1] for i in range(m - 1))]

    pool = [p for p in itertools.product(*(factor_weights(m) for m in F.ranks))]
    pool.sort(key=lambda w: (F.dimension(w), w))

    square_cache: dict = {}

    def fusion_square_stats(w):
        hit = square_cache.get(w)
        if hit is None:
            sq = fusion_tensor(F, w, w)
            hit = (sum(sq.values()), len(sq))
            square_cache[w] = hit
        return hit

    candidates: dict = {}
    for x in sorted(domain, key=lambda e: (e.length, e.form)):
        if x == unit:
            candidates[x] = [F.zero_weight()]
            continue
        diag = rows.get((x, x))
        if diag is not None:
            want = (sum(diag.values()), len(diag))
            candidates[x] = [w for w in pool if fusion_square_stats(w) == want]
        else:
            candidates[x] = pool

    # most-constrained elements first, unit always leading
    order = sorted(
        domain,
        key=lambda e: (e != unit, len(candidates[e]), e.length, e.form),
    )

    tensor_cache: dict = {}

    def tensor(a, b):
        hit = tensor_cache.get((a, b))
        if hit is None:
            hit = fusion_tensor(F, a, b)
            tensor_cache[(a, b)] = hit
        return hit

    assign: dict = {}
    used: set = set()

    def row_consistent(pair) -> bool:
        x, y = pair
        if x not in assign or y not in assign:
            return True
        row = rows[pair]
        expected = tensor(assign[x], assign[y])
        got: dict = {}
        fully = True
        for z, c in row.items():
            if z in assign:
                got[assign[z]] = got.get(assign[z], 0) + c
            else:
                fully = False
        for w, c in got.items():
            if c > expected.get(w, 0):
                return False
        if fully:
            return got == expected
        return True

    def consistent_after(x) -> bool:
        for pair, row in rows.items():
            if x in pair or x in row:
                if not row_consistent(pair):
                    return False
        return True

    def backtrack(i: int) -> bool:
        if i == len(order):
            return True
        x = order[i]
        for w in candidates[x]:
            if w in used:
                continue
            assign[x] = w
            used.add(w)
            if consistent_after(x) and backtrack(i + 1):
                return True
            used.discard(w)
            del assign[x]
        return False

    if backtrack(0):
        checked = sum(
            1 for pair in rows
            if all(e in assign for e in pair) and all(z in assign for z in rows[pair])
        )
        return FusionMatch(dict(assign), checked)
    return None
