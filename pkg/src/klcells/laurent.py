"""Exact Laurent polynomials over the integers, the coefficient ring ZZ[v, v^-1].

Everything downstream (Kazhdan-Lusztig coefficients, structure constants,
balanced Poincare polynomials, grading shifts) lives in this ring.  The
representation is a sparse map {degree: coefficient} with no stored zeros;
coefficients are Python ints, so overflow is impossible by construction.

The textual form is the one the CLI prints and parses:

    v^6+3v^4+5v^2+6+5v^-2+3v^-4+v^-6

i.e. descending degrees, explicit signs, no spaces, ``v`` for degree one and
``v^-1`` for degree minus one.
"""

from __future__ import annotations

import re

from .errors import ParseError

_TERM_RE = re.compile(r"^(\d+)?(v(?:\^(-?\d+))?)?$")


class LaurentPoly:
    """An element of ZZ[v, v^-1] as an immutable sparse degree->coefficient map."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            self._terms = {}
        else:
            self._terms = {int(d): int(c) for d, c in dict(terms).items() if c != 0}
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def v(cls, degree: int = 1, coefficient: int = 1) -> "LaurentPoly":
        return cls({degree: coefficient})

    @classmethod
    def from_pairs(cls, pairs) -> "LaurentPoly":
        """Build from an iterable of (degree, coefficient) pairs, summing repeats."""
        terms: dict = {}
        for d, c in pairs:
            terms[d] = terms.get(d, 0) + c
        return cls(terms)

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> dict:
        """Degree -> coefficient map (a fresh copy; zero coefficients absent)."""
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, degree: int) -> int:
        """Coefficient of v^degree, zero when absent."""
        return self._terms.get(degree, 0)

    def min_degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no minimal degree")
        return min(self._terms)

    def max_degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no maximal degree")
        return max(self._terms)

    def eval_at_one(self) -> int:
        """The integer p(1), i.e. the sum of all coefficients."""
        return sum(self._terms.values())

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self._terms.values())

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        terms = dict(self._terms)
        for d, c in other._terms.items():
            terms[d] = terms.get(d, 0) + c
        return LaurentPoly(terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({d: -c for d, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({d: c * other for d, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        terms: dict = {}
        for d1, c1 in self._terms.items():
            for d2, c2 in other._terms.items():
                d = d1 + d2
                terms[d] = terms.get(d, 0) + c1 * c2
        return LaurentPoly(terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers of polynomials are not defined")
        result = LaurentPoly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiplication by v^k."""
        return LaurentPoly({d + k: c for d, c in self._terms.items()})

    def bar(self) -> "LaurentPoly":
        """The v-antilinear involution v -> v^-1."""
        return LaurentPoly({-d: c for d, c in self._terms.items()})

    def is_bar_invariant(self) -> bool:
        return all(self._terms.get(-d, 0) == c for d, c in self._terms.items())

    # -- comparisons, hashing, rendering ------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        chunks = []
        for d in sorted(self._terms, reverse=True):
            c = self._terms[d]
            sign = "-" if c < 0 else ("+" if chunks else "")
            a = abs(c)
            if d == 0:
                body = str(a)
            else:
                vpart = "v" if d == 1 else f"v^{d}"
                body = vpart if a == 1 else f"{a}{vpart}"
            chunks.append(sign + body)
        return "".join(chunks)

    # -- parsing -------------------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Inverse of __str__; also accepts spaces around signs."""
        s = text.replace(" ", "")
        if not s:
            raise ParseError("empty polynomial")
        if s == "0":
            return cls.zero()
        # Split into signed tokens; '-' directly after '^' belongs to the exponent.
        tokens = []
        current = ""
        for i, ch in enumerate(s):
            if ch in "+-" and i > 0 and s[i - 1] != "^":
                tokens.append(current)
                current = ch if ch == "-" else ""
            elif ch in "+-" and i == 0:
                current = ch if ch == "-" else ""
            else:
                current += ch
        tokens.append(current)
        terms: dict = {}
        for tok in tokens:
            neg = tok.startswith("-")
            body = tok[1:] if neg else tok
            m = _TERM_RE.match(body)
            if not m or not body:
                raise ParseError(f"bad polynomial term {tok!r} in {text!r}")
            coeff_s, vpart, exp_s = m.group(1), m.group(2), m.group(3)
            if coeff_s is None and vpart is None:
                raise ParseError(f"bad polynomial term {tok!r} in {text!r}")
            c = int(coeff_s) if coeff_s is not None else 1
            if vpart is None:
                d = 0
            else:
                d = int(exp_s) if exp_s is not None else 1
            if neg:
                c = -c
            terms[d] = terms.get(d, 0) + c
        return cls(terms)


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Product in ZZ[v, v^-1]."""
    return a * b


def lp_bar(a: LaurentPoly) -> LaurentPoly:
    """The involution sending every c*v^d to c*v^-d."""
    return a.bar()


def lp_coeff(a: LaurentPoly, d: int) -> int:
    """Coefficient of v^d, zero when absent."""
    return a.coeff(d)


ZERO = LaurentPoly.zero()
ONE = LaurentPoly.one()
V = LaurentPoly.v(1)
