"""The polynomial realization: group action, Demazure operators, Frobenius data.

The ring is R = Q[y, x_1, ..., x_n] (exact rational coefficients; grading is
twice the polynomial degree).  Finite generators permute the x_i, while the
affine reflection and the rotation act y-linearly:

    s_0: x_1 -> x_n - y,  x_n -> x_1 + y      r: x_i -> x_{i+1}, x_n -> x_1 + y

Divided differences use the roots a_i = x_i - x_{i+1} and a_0 = x_n - x_1 - y
(fixed here; s_0 negates a_0).  For a finite standard parabolic W_I the
composite operator d_I = d_{w_I} is the Frobenius trace of R over the
invariants R^I: dual bases {f_i}, {f^j} with d_I(f_i f^j) = delta_{ij} are
solved for by exact linear algebra over Q, p_top = (1/r) sum f_i f^i
witnesses separability (d_I(p_top) = 1), and the multiplication

    m(f (x) g (x) h) = f d_I(g) (x) h

together with the comultiplication f (x) g -> f (x) 1 (x) g, the unit
1 -> sum f_i (x) f^i and the counit f (x) g -> fg makes R (x)_{R^I} R a
graded Frobenius algebra object; frobenius_check verifies all of those
axioms on monomial spanning sets up to a degree bound.

Tensors over R^I are normalized through the projection formula
g = sum_j d_I(g f_j) f^j, whose coefficients live in R^I and slide left
across the tensor sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import coxeter
from .coxeter import AFFINE_A, EXT_AFFINE_A, FINITE_A, Element
from .errors import (
    DivisionFailure,
    IndexOutOfRange,
    ParseError,
    SolveFailure,
    UnsupportedFamily,
)
from .laurent import LaurentPoly


class MultiPoly:
    """Polynomial in y, x_1..x_n over Q: {exponent tuple: Fraction}, no zeros.

    Exponent tuples have length n+1 with slot 0 for y.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        self.terms: dict = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[tuple(e)] = c

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "MultiPoly":
        return cls(n)

    @classmethod
    def const(cls, n: int, c) -> "MultiPoly":
        return cls(n, {(0,) * (n + 1): Fraction(c)})

    @classmethod
    def var_y(cls, n: int) -> "MultiPoly":
        e = [0] * (n + 1)
        e[0] = 1
        return cls(n, {tuple(e): 1})

    @classmethod
    def var_x(cls, n: int, i: int) -> "MultiPoly":
        if not 1 <= i <= n:
            raise IndexOutOfRange(f"x_{i} out of range for n={n}")
        e = [0] * (n + 1)
        e[i] = 1
        return cls(n, {tuple(e): 1})

    @classmethod
    def monomial(cls, n: int, exps, c=1) -> "MultiPoly":
        return cls(n, {tuple(exps): Fraction(c)})

    # -- ring operations -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.n, other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        out = MultiPoly(self.n)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = MultiPoly(self.n)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return MultiPoly(self.n)
            out = MultiPoly(self.n)
            out.terms = {e: c * other for e, c in self.terms.items()}
            return out
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, 0) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        out = MultiPoly(self.n)
        out.terms = terms
        return out

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * (self.n + 1), Fraction(0))

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_term() == other
        return isinstance(other, MultiPoly) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self):
        return f"MultiPoly({self})"

    # -- text form: "x1^2*x2 - 1/2*y*x3" ---------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        names = ["y"] + [f"x{i}" for i in range(1, self.n + 1)]
        chunks = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-k for k in e))):
            c = self.terms[e]
            vars_part = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}"
                for i, k in enumerate(e) if k
            )
            if not vars_part:
                body = str(abs(c))
            elif abs(c) == 1:
                body = vars_part
            else:
                body = f"{abs(c)}*{vars_part}"
            sign = "-" if c < 0 else "+"
            chunks.append((sign, body))
        first_sign, first_body = chunks[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in chunks[1:]:
            out += f" {sign} {body}"
        return out

    @classmethod
    def parse(cls, n: int, text: str) -> "MultiPoly":
        s = text.replace(" ", "")
        if not s:
            raise ParseError("empty polynomial")
        tokens = []
        cur = ""
        for i, ch in enumerate(s):
            if ch in "+-" and i > 0 and s[i - 1] not in "^/*+-":
                tokens.append(cur)
                cur = ch
            else:
                cur += ch
        tokens.append(cur)
        out = cls.zero(n)
        for tok in tokens:
            if not tok or tok in "+-":
                raise ParseError(f"bad term {tok!r} in {text!r}")
            sign = 1
            body = tok
            if body[0] == "+":
                body = body[1:]
            elif body[0] == "-":
                sign = -1
                body = body[1:]
            coeff = Fraction(1)
            exps = [0] * (n + 1)
            for factor in body.split("*"):
                if not factor:
                    raise ParseError(f"bad term {tok!r} in {text!r}")
                if factor[0].isdigit():
                    coeff *= Fraction(factor)
                    continue
                name, _, power = factor.partition("^")
                k = int(power) if power else 1
                if name == "y":
                    exps[0] += k
                elif name.startswith("x"):
                    idx = int(name[1:])
                    if not 1 <= idx <= n:
                        raise ParseError(f"variable {name} out of range")
                    exps[idx] += k
                else:
                    raise ParseError(f"unknown variable {name!r}")
            out = out + cls.monomial(n, exps, sign * coeff)
        return out


# ---------------------------------------------------------------------------
# the group action
# ---------------------------------------------------------------------------


def _act_generator(n: int, which, p: MultiPoly) -> MultiPoly:
    """Action of s_i (0 <= i <= n-1), "rho" or "rho_inv" on a polynomial."""
    out_terms: dict = {}

    def add(e, c):
        s = out_terms.get(e, 0) + c
        if s:
            out_terms[e] = s
        else:
            out_terms.pop(e, None)

    y = MultiPoly.var_y(n)
    if which == "rho":
        images = [MultiPoly.var_x(n, i + 1) for i in range(1, n)] + \
                 [MultiPoly.var_x(n, 1) + y]
    elif which == "rho_inv":
        images = [MultiPoly.var_x(n, n) - y] + \
                 [MultiPoly.var_x(n, i - 1) for i in range(2, n + 1)]
    elif which == 0:
        images = [MultiPoly.var_x(n, i) for i in range(1, n + 1)]
        images[0] = MultiPoly.var_x(n, n) - y
        images[n - 1] = MultiPoly.var_x(n, 1) + y
    else:
        i = which
        images = [MultiPoly.var_x(n, j) for j in range(1, n + 1)]
        images[i - 1], images[i] = images[i], images[i - 1]

    for e, c in p.terms.items():
        term = MultiPoly.const(n, c) * MultiPoly.monomial(n, (e[0],) + (0,) * n)
        for idx in range(1, n + 1):
            k = e[idx]
            if k:
                img = images[idx - 1]
                pw = img
                for _ in range(k - 1):
                    pw = pw * img
                term = term * pw
        for e2, c2 in term.terms.items():
            add(e2, c2)
    out = MultiPoly(n)
    out.terms = out_terms
    return out


def act(g, p: MultiPoly, n: int | None = None) -> MultiPoly:
    """Apply a generator index, "rho"/"rho_inv", or a group Element to p.

    Elements of the finite or (extended) affine family act through a reduced
    word (with rotation powers applied first); the action is a ring
    automorphism, so composition along any expression is sound.
    """
    if n is None:
        n = p.n
    if isinstance(g, Element):
        group = g.group
        if group.family not in (FINITE_A, AFFINE_A, EXT_AFFINE_A):
            raise UnsupportedFamily("polynomial action needs a type A family")
        if group.n != n:
            raise IndexOutOfRange(f"group rank {group.n} != polynomial rank {n}")
        k = group.rotation_part(g.eid) if group.family == EXT_AFFINE_A else 0
        if k:
            _, aff = group.affine_part_id(g.eid)
            word = coxeter.reduced_word(Element(group, group.with_rotation(aff, 0)))
        else:
            word = coxeter.reduced_word(g)
        out = p
        for s in reversed(word):
            out = _act_generator(n, s, out)
        rot = "rho" if k > 0 else "rho_inv"
        for _ in range(abs(k)):
            out = _act_generator(n, rot, out)
        return out
    if g in ("rho", "rho_inv"):
        return _act_generator(n, g, p)
    s = int(g)
    if not 0 <= s <= n - 1:
        raise IndexOutOfRange(f"generator {s} invalid for rank {n}")
    return _act_generator(n, s, p)


def root(n: int, i: int) -> MultiPoly:
    """a_i = x_i - x_{i+1} for 1 <= i <= n-1; a_0 = x_n - x_1 - y."""
    if i == 0:
        return MultiPoly.var_x(n, n) - MultiPoly.var_x(n, 1) - MultiPoly.var_y(n)
    if not 1 <= i <= n - 1:
        raise IndexOutOfRange(f"root index {i} invalid for rank {n}")
    return MultiPoly.var_x(n, i) - MultiPoly.var_x(n, i + 1)


def _divide_exact(p: MultiPoly, d: MultiPoly) -> MultiPoly:
    """Exact division by a linear polynomial; DivisionFailure on remainder."""
    n = p.n
    # pivot: the lexicographically largest variable occurring in d
    pivot = None
    for e in d.terms:
        for idx in range(n, -1, -1):
            if e[idx]:
                pivot = idx if pivot is None else max(pivot, idx)
                break
    if pivot is None:
        raise DivisionFailure("division by a constant is not used here")
    lead_exp = None
    for e in d.terms:
        if e[pivot]:
            lead_exp = e
            break
    lead_coeff = d.terms[lead_exp]
    quotient = MultiPoly.zero(n)
    rem = p
    while not rem.is_zero():
        cand = None
        for e in rem.terms:
            if e[pivot] > 0 and (cand is None or e[pivot] > cand[pivot] or
                                 (e[pivot] == cand[pivot] and e > cand)):
                cand = e
        if cand is None:
            raise DivisionFailure(f"nonzero remainder {rem} dividing by {d}")
        qexp = tuple(a - b for a, b in zip(cand, lead_exp))
        if any(k < 0 for k in qexp):
            raise DivisionFailure(f"cannot divide term {cand} by {lead_exp}")
        qc = rem.terms[cand] / lead_coeff
        qterm = MultiPoly.monomial(n, qexp, qc)
        quotient = quotient + qterm
        rem = rem - qterm * d
    return quotient


def demazure_s(i: int, p: MultiPoly) -> MultiPoly:
    """The divided difference (p - s_i(p)) / a_i; the division is always exact."""
    n = p.n
    num = p - act(i, p, n)
    if num.is_zero():
        return MultiPoly.zero(n)
    return _divide_exact(num, root(n, i))


def demazure_w(w, p: MultiPoly) -> MultiPoly:
    """Composition of divided differences along a reduced word of w."""
    if isinstance(w, Element):
        word = coxeter.reduced_word(w)
    else:
        word = tuple(w)
    out = p
    for s in reversed(word):
        out = demazure_s(s, out)
    return out


# ---------------------------------------------------------------------------
# Frobenius structure for a finite parabolic
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class DualBases:
    I: tuple
    n: int
    w_I: Element
    basis: list          # f_i
    dual: list           # f^j with d_I(f_i f^j) = delta_ij
    r: int

    def __post_init__(self):
        self._mono_trace: dict = {}
        self._word = coxeter.reduced_word(self.w_I)

    def trace(self, p: MultiPoly) -> MultiPoly:
        """d_I(p), computed monomial by monomial with a per-basis cache."""
        n = self.n
        out_terms: dict = {}
        for e, c in p.terms.items():
            tr = self._mono_trace.get(e)
            if tr is None:
                mono = MultiPoly.monomial(n, e)
                for s in reversed(self._word):
                    mono = demazure_s(s, mono)
                tr = mono
                self._mono_trace[e] = tr
            for e2, c2 in tr.terms.items():
                s2 = out_terms.get(e2, 0) + c * c2
                if s2:
                    out_terms[e2] = s2
                else:
                    out_terms.pop(e2, None)
        out = MultiPoly(n)
        out.terms = out_terms
        return out


def _monomials_leq(n: int, variables, bound: int):
    """All monomial exponent tuples in the given x-variables, degree <= bound."""
    out = []

    def rec(idx, rem, exps):
        if idx == len(variables):
            out.append(tuple(exps))
            return
        for k in range(rem + 1):
            e = list(exps)
            e[variables[idx]] = k
            rec(idx + 1, rem - k, e)

    rec(0, bound, [0] * (n + 1))
    return out


def _artin_basis(n: int, I) -> list:
    """Exponent tuples of the componentwise Artin basis of R over R^I.

    A component on c consecutive generators involves the c+1 variables
    x_lo .. x_{lo+c}; the Artin basis takes x_{lo+t-1}^{e_t} with
    0 <= e_t <= (c+1) - t, giving (c+1)! monomials.
    """
    comps = coxeter._components(set(I), n, False) if I else []
    out = [tuple([0] * (n + 1))]
    for comp in comps:
        lo = comp[0]
        nvars = len(comp) + 1
        piece = []

        def rec(t, exps):
            if t > nvars:
                piece.append(tuple(exps))
                return
            for k in range(nvars - t + 1):
                e = list(exps)
                e[lo + t - 1] = k
                rec(t + 1, e)

        rec(1, [0] * (n + 1))
        out = [tuple(a + b for a, b in zip(e1, e2)) for e1 in out for e2 in piece]
    return out


def dual_bases(I, n: int, group=None) -> DualBases:
    """Solve for dual bases of R over R^I under the d_I pairing.

    The primal basis is the componentwise Artin monomial family; each dual
    f^j is solved for in the span of monomials (in the component variables)
    of complementary degree, by exact Gaussian elimination.  I must generate
    a finite parabolic among the finite simple reflections s_1..s_{n-1}.
    """
    I = tuple(sorted(set(I)))
    if group is None:
        group = coxeter.get_group(FINITE_A, n)
    if any(s == 0 for s in I):
        raise UnsupportedFamily(
            "dual bases are implemented for parabolics inside s_1..s_{n-1}"
        )
    if not coxeter.parabolic_is_finite(group, I):
        from .errors import InfiniteParabolic
        raise InfiniteParabolic(f"parabolic on {list(I)} is infinite")
    w_I = coxeter.longest_parabolic(group, I)
    a = w_I.length
    basis_exps = _artin_basis(n, I)
    r = len(basis_exps)
    if r > 24:
        raise SolveFailure(f"|W_I| = {r} exceeds the supported bound 24")
    basis = [MultiPoly.monomial(n, e) for e in basis_exps]
    variables = sorted({idx for comp in (coxeter._components(set(I), n, False) if I else [])
                        for c in comp for idx in (c, c + 1)})
    shell = DualBases(I=I, n=n, w_I=w_I, basis=basis, dual=[], r=r)
    trace = shell.trace

    # pair every basis element against every candidate monomial once
    duals = []
    for j, fj in enumerate(basis):
        degree_needed = a - sum(basis_exps[j])
        cands = [e for e in _monomials_leq(n, variables, degree_needed)
                 if sum(e) == degree_needed]
        # rows: one equation per (i, monomial of trace output)
        pairings = []
        for e in cands:
            cand = MultiPoly.monomial(n, e)
            pairings.append([trace(fi * cand) for fi in basis])
        # linear system: sum_c t_c * trace(f_i * cand_c) == delta_ij (a constant)
        eq_keys = set()
        for col in pairings:
            for tr in col:
                eq_keys.update(tr.terms.keys())
        eq_keys.add((0,) * (n + 1))
        eq_keys = sorted(eq_keys)
        rows = []
        rhs = []
        zero_exp = (0,) * (n + 1)
        for i in range(r):
            for key in eq_keys:
                rows.append([pairings[c][i].terms.get(key, Fraction(0))
                             for c in range(len(cands))])
                want = Fraction(1) if (i == j and key == zero_exp) else Fraction(0)
                rhs.append(want)
        sol = _solve_exact(rows, rhs)
        if sol is None:
            raise SolveFailure(
                f"no dual for basis element {basis[j]} within degree {degree_needed}"
            )
        fj_dual = MultiPoly.zero(n)
        for c, t in enumerate(sol):
            if t:
                fj_dual = fj_dual + MultiPoly.monomial(n, cands[c], t)
        duals.append(fj_dual)
    shell.dual = duals
    return shell


def _solve_exact(rows, rhs):
    """Gaussian elimination over Q; returns one solution or None."""
    m = len(rows)
    if m == 0:
        return []
    ncols = len(rows[0])
    A = [list(row) + [rhs[i]] for i, row in enumerate(rows)]
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, m):
            if A[i][col]:
                piv = i
                break
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        pv = A[rank][col]
        A[rank] = [v / pv for v in A[rank]]
        for i in range(m):
            if i != rank and A[i][col]:
                f = A[i][col]
                A[i] = [v - f * w for v, w in zip(A[i], A[rank])]
        pivots.append(col)
        rank += 1
        if rank == m:
            break
    for i in range(rank, m):
        if A[i][ncols]:
            return None
    sol = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        sol[col] = A[i][ncols]
    return sol


def p_top(db: DualBases) -> MultiPoly:
    """(1/r) sum_i f_i f^i; satisfies d_I(p_top) = 1."""
    n = db.n
    acc = MultiPoly.zero(n)
    for fi, fid in zip(db.basis, db.dual):
        acc = acc + fi * fid
    return acc * Fraction(1, db.r)


# ---------------------------------------------------------------------------
# tensors over the invariants
# ---------------------------------------------------------------------------


@dataclass
class TensorElt:
    """Normal form sum_j g_j (x) f^j in R (x)_{R^I} R."""

    db: DualBases
    coeffs: dict  # dual index j -> MultiPoly g_j

    def __eq__(self, other):
        return (
            isinstance(other, TensorElt)
            and self.db is other.db
            and {j: g for j, g in self.coeffs.items() if not g.is_zero()}
            == {j: g for j, g in other.coeffs.items() if not g.is_zero()}
        )

    def expand(self) -> MultiPoly:
        """Multiply the tensor legs back together (the counit direction)."""
        out = MultiPoly.zero(self.db.n)
        for j, g in self.coeffs.items():
            out = out + g * self.db.dual[j]
        return out

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(
            f"({g}) (x) ({self.db.dual[j]})" for j, g in sorted(self.coeffs.items())
        )


def tensor_normal_form(f: MultiPoly, g: MultiPoly, db: DualBases) -> TensorElt:
    """f (x) g = sum_j f * d_I(g f_j) (x) f^j (the projection formula)."""
    coeffs = {}
    for j, fj in enumerate(db.basis):
        c = f * db.trace(g * fj)
        if not c.is_zero():
            coeffs[j] = c
    return TensorElt(db, coeffs)


class NSlotTensor:
    """Sum of k-slot raw tensors over R^I, normalized on demand.

    Supports the Frobenius maps: m at a junction (contract the middle leg
    through d_I), delta at a leg (insert 1), unit and counit.  Equality goes
    through the normal form that pushes every slot except the first into
    dual-basis coordinates.
    """

    def __init__(self, db: DualBases, items=None):
        self.db = db
        self.items = list(items or [])  # list of tuples of MultiPoly

    @classmethod
    def of(cls, db: DualBases, *slots) -> "NSlotTensor":
        return cls(db, [tuple(slots)])

    def m_at(self, i: int) -> "NSlotTensor":
        """Contract slots i, i+1 (0-based): ... a, b ... -> ... a*d_I(b) ..."""
        out = []
        for t in self.items:
            a = t[i] * self.db.trace(t[i + 1])
            out.append(t[:i] + (a,) + t[i + 2:])
        return NSlotTensor(self.db, out)

    def delta_at(self, i: int) -> "NSlotTensor":
        """Insert a 1 leg after slot i: ... a ... -> ... a, 1 ..."""
        one = MultiPoly.const(self.db.n, 1)
        out = [t[: i + 1] + (one,) + t[i + 1:] for t in self.items]
        return NSlotTensor(self.db, out)

    def counit_at(self, i: int) -> "NSlotTensor":
        """Multiply slots i, i+1 together (the counit on that factor)."""
        out = [t[:i] + (t[i] * t[i + 1],) + t[i + 2:] for t in self.items]
        return NSlotTensor(self.db, out)

    def mul_slot(self, i: int, p: MultiPoly) -> "NSlotTensor":
        return NSlotTensor(self.db, [t[:i] + (t[i] * p,) + t[i + 1:] for t in self.items])

    def normal_form(self) -> dict:
        """Map (j_2, ..., j_k) -> coefficient polynomial in the first slot."""
        db = self.db
        nf: dict = {}
        for t in self.items:
            partial = {(): t[0]}
            for leg in t[1:]:
                nxt: dict = {}
                for key, coeff in partial.items():
                    for j, fj in enumerate(db.basis):
                        c = db.trace(leg * fj)
                        if c.is_zero():
                            continue
                        k2 = key + (j,)
                        add = coeff * c
                        if k2 in nxt:
                            s = nxt[k2] + add
                            if s.is_zero():
                                del nxt[k2]
                            else:
                                nxt[k2] = s
                        elif not add.is_zero():
                            nxt[k2] = add
                partial = nxt
            for key, coeff in partial.items():
                if key in nf:
                    s = nf[key] + coeff
                    if s.is_zero():
                        del nf[key]
                    else:
                        nf[key] = s
                elif not coeff.is_zero():
                    nf[key] = coeff
        return nf

    def __eq__(self, other):
        return isinstance(other, NSlotTensor) and self.db is other.db and \
            self.normal_form() == other.normal_form()


def frobenius_check(I, n: int, deg_bound: int = 6, db: DualBases | None = None):
    """Verify the Frobenius algebra axioms on monomial spanning tensors.

    Checks, for f, g monomials of degree <= deg_bound in the component
    variables: associativity and two-sided unitality of the multiplication,
    coassociativity and two-sided counitality of the comultiplication, the
    Frobenius compatibilities, the separability splitting through p_top, the
    trace normalization d_I(p_top) = 1, and the graded-rank identity (the
    dual-basis degree profile against the parabolic Poincare polynomial).
    """
    from . import typea
    from .report import Report

    if db is None:
        db = dual_bases(I, n)
    report = Report(f"Frobenius axioms for I={list(db.I)}, n={n}, degree <= {deg_bound}")

    dual_ok = report.check("dual bases satisfy d_I(f_i f^j) = delta_ij")
    for i, fi in enumerate(db.basis):
        for j, fjd in enumerate(db.dual):
            dual_ok.count()
            val = db.trace(fi * fjd)
            want = 1 if i == j else 0
            if val != want:
                dual_ok.fail(f"(f_{i}, f^{j})", val, want)

    pt = p_top(db)
    ptop_ok = report.check("d_I(p_top) = 1")
    ptop_ok.count()
    if db.trace(pt) != 1:
        ptop_ok.fail("p_top", db.trace(pt), 1)

    variables = sorted({idx for comp in (coxeter._components(set(db.I), n, False)
                                         if db.I else []) for c in comp
                        for idx in (c, c + 1)})
    monos = [MultiPoly.monomial(n, e) for e in _monomials_leq(n, variables, deg_bound)]
    one = MultiPoly.const(n, 1)

    assoc = report.check("associativity m(m (x) id) = m(id (x) m)")
    unit_l = report.check("left unitality m(u (x) id) = id")
    unit_r = report.check("right unitality m(id (x) u) = id")
    coassoc = report.check("coassociativity (delta (x) id) delta = (id (x) delta) delta")
    counit_l = report.check("left counitality (eps (x) id) delta = id")
    counit_r = report.check("right counitality (id (x) eps) delta = id")
    frob1 = report.check("Frobenius: delta m = (m (x) id)(id (x) delta)")
    frob2 = report.check("Frobenius: delta m = (id (x) m)(delta (x) id)")
    sep = report.check("separability: m sigma = id with sigma = (x) p_top (x)")

    for f in monos:
        for g in monos:
            pair = NSlotTensor.of(db, f, g)
            # associativity on the 4-slot spanning tensor (1, f, g, 1)
            quad = NSlotTensor.of(db, one, f, g, one)
            assoc.count()
            if quad.m_at(0).m_at(0) != quad.m_at(1).m_at(0):
                assoc.fail(f"(1,{f},{g},1)", "m(m x id)", "m(id x m)")
            # unit: u (x) id then multiply == identity
            acc = NSlotTensor(db, [])
            for fi, fid in zip(db.basis, db.dual):
                acc.items.extend(
                    NSlotTensor.of(db, fi, fid * f, g).items
                )
            unit_l.count()
            if NSlotTensor(db, acc.items).m_at(0) != pair:
                unit_l.fail(f"({f},{g})", "m(u x id)", "id")
            acc2 = NSlotTensor(db, [])
            for fi, fid in zip(db.basis, db.dual):
                acc2.items.extend(
                    NSlotTensor.of(db, f, g * fi, fid).items
                )
            unit_r.count()
            if NSlotTensor(db, acc2.items).m_at(0) != pair:
                unit_r.fail(f"({f},{g})", "m(id x u)", "id")
            coassoc.count()
            if pair.delta_at(0).delta_at(0) != pair.delta_at(0).delta_at(1):
                coassoc.fail(f"({f},{g})", "(delta x id)delta", "(id x delta)delta")
            counit_l.count()
            if pair.delta_at(0).counit_at(0) != pair:
                counit_l.fail(f"({f},{g})", "(eps x id)delta", "id")
            counit_r.count()
            if pair.delta_at(0).counit_at(1) != pair:
                counit_r.fail(f"({f},{g})", "(id x eps)delta", "id")
            # Frobenius compatibility on the 3-slot tensor (f, g, 1)
            tri = NSlotTensor.of(db, f, g, one)
            lhs = tri.m_at(0).delta_at(0)
            frob1.count()
            if lhs != tri.delta_at(1).m_at(0):
                frob1.fail(f"({f},{g},1)", "delta m", "(m x id)(id x delta)")
            frob2.count()
            if lhs != tri.delta_at(0).m_at(1):
                frob2.fail(f"({f},{g},1)", "delta m", "(id x m)(delta x id)")
            sep.count()
            sigma = pair.delta_at(0).mul_slot(1, pt)
            if sigma.m_at(0) != pair:
                sep.fail(f"({f},{g})", "m sigma", "id")

    # graded ranks as left R-modules, with the 2a twist of the Duflo object:
    # the two-fold tensor has basis {1 (x) f^j} in degrees 2 deg(f^j) - 2a,
    # whose generating function must be the balanced Poincare profile, and
    # the three-fold tensor must be that profile times itself
    grank = report.check("graded rank of the tensor powers matches pi~(I)")
    group = coxeter.get_group(FINITE_A, n)
    pi_tilde = typea.pi_I(group, set(db.I)).shift(-db.w_I.length)
    profile = LaurentPoly.from_pairs(
        (2 * fjd.degree() - 2 * db.w_I.length, 1) for fjd in db.dual
    )
    grank.count()
    if profile != pi_tilde:
        grank.fail("dual degree profile", profile, pi_tilde)
    grank.count()
    sq = LaurentPoly.zero()
    for fj in db.dual:
        for fk in db.dual:
            sq = sq + LaurentPoly.v(2 * (fj.degree() + fk.degree()) - 4 * db.w_I.length)
    if sq != pi_tilde * profile:
        grank.fail("triple tensor graded rank", sq, pi_tilde * profile)
    return report
