"""Independent oracles used by the test suite.

Each oracle takes a route disjoint from the code path it checks:

* KL rows by self-dualization: build b_w = delta_w + corrections directly
  from the defining bar-invariance/degree-bound property, using only
  standard-basis arithmetic (never the descent recursion).
* Lengths by breadth-first search from the identity.
* Littlewood-Richardson by Schur polynomial multiplication in finitely many
  variables (semistandard-tableau monomial expansions).
* Schur multipliers by integral linear algebra on the normalized bar
  complex (2-cocycles modulo coboundaries and Bockstein lifts).
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from klcells import coxeter
from klcells.coxeter import Element, reduced_word
from klcells.hecke import P_ONE, p_add, p_mul, p_scale, p_shift


def _add(acc, key, p):
    r = p_add(acc.get(key), p)
    if r is None:
        acc.pop(key, None)
    else:
        acc[key] = r


def _p_bar(p):
    if p is None:
        return None
    off = p[0]
    cs = p[1:]
    return tuple([-(off + len(cs) - 1)] + list(reversed(cs)))


class BarInvarianceOracle:
    """KL rows from scratch: the unique self-dual triangular correction."""

    def __init__(self, group):
        self.g = group
        self._bar_delta: dict = {}
        self._rows: dict = {}

    def _delta_s_inv_left(self, s, h):
        g = self.g
        out: dict = {}
        for w, p in h.items():
            sw = g.mul_gen_left(w, s)
            _add(out, sw, p)
            if g.length_of(sw) > g.length_of(w):
                _add(out, w, p_add(p_shift(p, 1), p_scale(p_shift(p, -1), -1)))
        return out

    def bar_delta(self, eid):
        hit = self._bar_delta.get(eid)
        if hit is None:
            cur = {self.g.identity.eid: P_ONE}
            for s in reversed(reduced_word(Element(self.g, eid))):
                cur = self._delta_s_inv_left(s, cur)
            self._bar_delta[eid] = hit = cur
        return hit

    def row(self, wid):
        hit = self._rows.get(wid)
        if hit is not None:
            return hit
        g = self.g
        B = {wid: P_ONE}
        for k in range(g.length_of(wid) - 1, -1, -1):
            D: dict = {}
            for y, c in B.items():
                cb = _p_bar(c)
                for u, q in self.bar_delta(y).items():
                    _add(D, u, p_mul(cb, q))
            for y, c in B.items():
                _add(D, y, p_scale(c, -1))
            for y in [y for y in D if g.length_of(y) == k]:
                d = D[y]
                h = None
                for i in range(1, len(d)):
                    deg = d[0] + i - 1
                    if deg > 0 and d[i]:
                        h = p_add(h, (deg, d[i]))
                if h is not None:
                    _add(B, y, h)
        self._rows[wid] = B
        return B


def bfs_lengths(group, L):
    """{element id: distance from the identity}, by plain BFS."""
    dist = {group.identity.eid: 0}
    frontier = [group.identity.eid]
    for step in range(1, L + 1):
        nxt = []
        for eid in frontier:
            for s in group.generators():
                t = group.mul_gen_right(eid, s)
                if t not in dist:
                    dist[t] = step
                    nxt.append(t)
        frontier = nxt
    return dist


# ---------------------------------------------------------------------------
# Schur polynomial route to Littlewood-Richardson coefficients
# ---------------------------------------------------------------------------


def semistandard_contents(shape, m):
    shape = list(shape)
    rows = len(shape)
    grid: dict = {}
    out = []

    def fill(r, c):
        if r == rows:
            cont = [0] * m
            for v in grid.values():
                cont[v - 1] += 1
            out.append(tuple(cont))
            return
        lo = 1
        if c > 0:
            lo = max(lo, grid[(r, c - 1)])
        if r > 0 and c < shape[r - 1]:
            lo = max(lo, grid[(r - 1, c)] + 1)
        for v in range(lo, m + 1):
            grid[(r, c)] = v
            nr, nc = (r, c + 1) if c + 1 < shape[r] else (r + 1, 0)
            fill(nr, nc)
            del grid[(r, c)]

    if not shape:
        return [tuple([0] * m)]
    fill(0, 0)
    return out


def schur_poly(shape, m):
    d: dict = {}
    for cont in semistandard_contents(shape, m):
        d[cont] = d.get(cont, 0) + 1
    return d


def lr_by_schur(mu, nu, m):
    """{lambda: c^lambda_{mu nu}} restricted to partitions with <= m rows."""
    a, b = schur_poly(mu, m), schur_poly(nu, m)
    prod: dict = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            prod[k] = prod.get(k, 0) + ca * cb
    out: dict = {}
    while prod:
        lam = max(prod)
        c = prod[lam]
        lamp = tuple(x for x in lam if x)
        out[lamp] = c
        for k, v in schur_poly(lamp, m).items():
            r = prod.get(k, 0) - c * v
            if r:
                prod[k] = r
            else:
                prod.pop(k, None)
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# Schur multiplier of a finite abelian group by bar-complex linear algebra
# ---------------------------------------------------------------------------


def _snf(mat):
    """Smith normal form diagonal of an integer matrix (list of rows)."""
    if not mat or not mat[0]:
        return []
    A = [list(r) for r in mat]
    rows, cols = len(A), len(A[0])
    diag = []
    top = 0
    while top < min(rows, cols):
        # find the smallest nonzero entry at or below/after (top, top)
        piv = None
        best = None
        for i in range(top, rows):
            for j in range(top, cols):
                v = abs(A[i][j])
                if v and (best is None or v < best):
                    best = v
                    piv = (i, j)
        if piv is None:
            break
        i0, j0 = piv
        A[top], A[i0] = A[i0], A[top]
        for r in A:
            r[top], r[j0] = r[j0], r[top]
        again = True
        while again:
            again = False
            p = A[top][top]
            for i in range(top + 1, rows):
                if A[i][top]:
                    q = A[i][top] // p
                    A[i] = [a - q * b for a, b in zip(A[i], A[top])]
                    if A[i][top]:
                        A[top], A[i] = A[i], A[top]
                        again = True
                        break
            if again:
                continue
            for j in range(top + 1, cols):
                if A[top][j]:
                    q = A[top][j] // p
                    for i in range(rows):
                        A[i][j] -= q * A[i][top]
                    if A[top][j]:
                        for i in range(rows):
                            A[i][top], A[i][j] = A[i][j], A[i][top]
                        again = True
                        break
        diag.append(abs(A[top][top]))
        top += 1
    # enforce divisibility chain
    changed = True
    while changed:
        changed = False
        for i in range(len(diag) - 1):
            a, b = diag[i], diag[i + 1]
            if a and b and b % a:
                import math
                g = math.gcd(a, b)
                diag[i], diag[i + 1] = g, a * b // g
                changed = True
    return [d for d in diag if d]


def schur_multiplier_oracle(ds):
    """Invariant factors (> 1) of H^2(prod Z/d_i, C^*) by cocycle classification.

    Normalized bar complex with values in (1/N)Z/Z for N the exponent:
    cocycles are the integer solutions of the coboundary equations mod N;
    the denominator subgroup is spanned by coboundaries of 1-cochains,
    the Bockstein carry cocycles of the dual generators, and N times the
    lattice.  The quotient's Smith form is the answer.
    """
    import math

    ds = [int(d) for d in ds]
    if not ds:
        return []
    N = 1
    for d in ds:
        N = N * d // math.gcd(N, d)
    elements = list(itertools.product(*(range(d) for d in ds)))
    nontriv = [a for a in elements if any(a)]
    index = {a: i for i, a in enumerate(nontriv)}
    c1 = len(nontriv)
    pairs = [(a, b) for a in nontriv for b in nontriv]
    pidx = {p: i for i, p in enumerate(pairs)}
    c2 = len(pairs)

    def add_elems(a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, ds))

    # 2-coboundary generators: d1(phi_a)(x, y) = phi(x) + phi(y) - phi(xy)
    denom_rows = []
    for a in nontriv:
        row = [0] * c2
        for (x, y), j in pidx.items():
            v = 0
            if x == a:
                v += 1
            if y == a:
                v += 1
            if add_elems(x, y) == a:
                v -= 1
            if v:
                row[j] = v
        denom_rows.append(row)
    # Bockstein carry cocycles, one per cyclic factor
    for i, d in enumerate(ds):
        row = [0] * c2
        for (x, y), j in pidx.items():
            if x[i] + y[i] >= d:
                row[j] = 1
        denom_rows.append(row)
    for j in range(c2):
        row = [0] * c2
        row[j] = N
        denom_rows.append(row)

    # cocycle condition rows: psi(y,z) - psi(xy,z) + psi(x,yz) - psi(x,y) = 0 mod N
    coc_rows = []
    for x in nontriv:
        for y in nontriv:
            for z in nontriv:
                row = [0] * (c2 + 1)
                xy = add_elems(x, y)
                yz = add_elems(y, z)
                row[pidx[(y, z)]] += 1
                if any(xy):
                    row[pidx[(xy, z)]] -= 1
                if any(yz):
                    row[pidx[(x, yz)]] += 1
                row[pidx[(x, y)]] -= 1
                if any(v for v in row):
                    coc_rows.append(row[:c2])

    # cocycle lattice: integer vectors vanishing mod N under every cocycle
    # equation; diagonalize the constraint matrix as U A V = diag(s), so the
    # lattice is V . diag(N / gcd(s_i, N)) and coordinates come from V^-1
    s, V, Vinv = _diagonalize_right(coc_rows, c2)
    scales = []
    for i in range(c2):
        si = s[i] if i < len(s) else 0
        import math
        scales.append(N // math.gcd(si, N) if si else 1)
    coords = []
    for d in denom_rows:
        w = [sum(Vinv[i][k] * d[k] for k in range(c2)) for i in range(c2)]
        row = []
        for i in range(c2):
            q, rem = divmod(w[i], scales[i])
            assert rem == 0, "denominator vector outside the cocycle lattice"
            row.append(q)
        coords.append(row)
    inv = _snf(coords)
    assert len(inv) == c2, "quotient must be finite"
    return sorted(d for d in inv if d > 1)


def _diagonalize_right(rows, ncols):
    """U A V = diag(s) with only the column transform tracked.

    Row operations never touch the kernel, so U is dropped; V and V^-1 are
    maintained so kernel lattices and coordinates are exact.  Pivots are
    chosen of minimal absolute value to keep entries small (the bar-complex
    matrices are rich in unit entries).
    """
    A = [list(r) for r in rows]
    nrows = len(A)
    V = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
    Vinv = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def swap_cols(i, j):
        if i == j:
            return
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def add_col(src, dst, q):
        # column_dst += q * column_src; V tracks, Vinv untracks
        if not q:
            return
        for r in A:
            if r[src]:
                r[dst] += q * r[src]
        for r in V:
            if r[src]:
                r[dst] += q * r[src]
        row_d = Vinv[dst]
        Vinv[src] = [a - q * b for a, b in zip(Vinv[src], row_d)]

    s = []
    top = 0
    while top < min(nrows, ncols):
        piv = None
        best = None
        for i in range(top, nrows):
            Ai = A[i]
            for j in range(top, ncols):
                v = Ai[j]
                if v:
                    v = abs(v)
                    if best is None or v < best:
                        best = v
                        piv = (i, j)
                        if v == 1:
                            break
            if best == 1:
                break
        if piv is None:
            break
        i0, j0 = piv
        A[top], A[i0] = A[i0], A[top]
        swap_cols(top, j0)
        while True:
            p = A[top][top]
            moved = False
            for i in range(top + 1, nrows):
                if A[i][top]:
                    q = A[i][top] // p
                    if q:
                        A[i] = [a - q * b for a, b in zip(A[i], A[top])]
                    if A[i][top]:
                        A[top], A[i] = A[i], A[top]
                        moved = True
                        break
            if moved:
                continue
            for j in range(top + 1, ncols):
                if A[top][j]:
                    q = A[top][j] // p
                    add_col(top, j, -q)
                    if A[top][j]:
                        swap_cols(top, j)
                        moved = True
                        break
            if not moved:
                break
        s.append(abs(A[top][top]))
        top += 1
    return s, V, Vinv


def primary_parts(orders):
    """Multiset of prime-power parts of a list of cyclic orders."""
    out = []
    for d in orders:
        d = int(d)
        p = 2
        while d > 1:
            if d % p == 0:
                q = 1
                while d % p == 0:
                    d //= p
                    q *= p
                out.append(q)
            p += 1
    return sorted(out)
