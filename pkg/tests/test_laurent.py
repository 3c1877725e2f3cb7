"""The coefficient ring: arithmetic, the bar involution, text round trips."""

import random

import pytest

from klcells.errors import ParseError
from klcells.laurent import LaurentPoly, lp_bar, lp_coeff, lp_mul

V = LaurentPoly.v


def rand_poly(rng, span=6, terms=4):
    return LaurentPoly({rng.randint(-span, span): rng.randint(-9, 9)
                        for _ in range(terms)})


def test_binomial_square():
    p = V(1) + V(-1)
    assert lp_mul(p, p) == LaurentPoly({2: 1, 0: 2, -2: 1})


def test_one_is_identity():
    rng = random.Random(1)
    for _ in range(50):
        p = rand_poly(rng)
        assert lp_mul(LaurentPoly.one(), p) == p


def test_a2_poincare_value_at_one():
    p = LaurentPoly.parse("v^3+2v+2v^-1+v^-3")
    assert p.eval_at_one() == 6


def test_bar_basics():
    assert lp_bar(V(1)) == V(-1)
    palindrome = LaurentPoly({2: 1, 0: 3, -2: 1})
    assert lp_bar(palindrome) == palindrome
    assert palindrome.is_bar_invariant()


def test_bar_involutive_automorphism():
    rng = random.Random(2)
    for _ in range(100):
        p, q = rand_poly(rng), rand_poly(rng)
        assert lp_bar(lp_bar(p)) == p
        assert lp_bar(lp_mul(p, q)) == lp_mul(lp_bar(p), lp_bar(q))


def test_coeff():
    p = V(1) + V(-1)
    assert lp_coeff(p, -1) == 1
    assert lp_coeff(p, 0) == 0
    pal = LaurentPoly.parse("v^6+3v^4+5v^2+6+5v^-2+3v^-4+v^-6")
    assert lp_coeff(pal, -6) == 1


def test_ring_axioms_random():
    rng = random.Random(3)
    for _ in range(60):
        a, b, c = (rand_poly(rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert a + b == b + a
        assert a - a == LaurentPoly.zero()


def test_min_degree_of_products():
    rng = random.Random(4)
    for _ in range(40):
        a, b = rand_poly(rng), rand_poly(rng)
        if a.is_zero() or b.is_zero():
            continue
        prod = a * b
        if not prod.is_zero():
            assert prod.min_degree() >= a.min_degree() + b.min_degree()
            # equality whenever leading coefficients do not cancel
            if a.coeff(a.min_degree()) * b.coeff(b.min_degree()) != 0:
                assert prod.min_degree() == a.min_degree() + b.min_degree()


def test_text_rendering_exact():
    pal = LaurentPoly({6: 1, 4: 3, 2: 5, 0: 6, -2: 5, -4: 3, -6: 1})
    assert str(pal) == "v^6+3v^4+5v^2+6+5v^-2+3v^-4+v^-6"
    assert str(LaurentPoly.zero()) == "0"
    assert str(V(1)) == "v"
    assert str(V(-1)) == "v^-1"
    assert str(LaurentPoly({1: -1, 0: 2})) == "-v+2"
    assert str(LaurentPoly({3: 2, -2: -4})) == "2v^3-4v^-2"


def test_parse_roundtrip():
    rng = random.Random(5)
    for _ in range(100):
        p = rand_poly(rng)
        assert LaurentPoly.parse(str(p)) == p
    assert LaurentPoly.parse("0") == LaurentPoly.zero()
    assert LaurentPoly.parse("v") == V(1)
    assert LaurentPoly.parse("-v^-3") == V(-3, -1)


def test_parse_rejects_garbage():
    for bad in ["", "v^", "vv", "3x", "++1", "v^--2"]:
        with pytest.raises(ParseError):
            LaurentPoly.parse(bad)


def test_shift_and_pow():
    p = V(1) + LaurentPoly.one()
    assert p.shift(2) == V(3) + V(2)
    assert p ** 2 == p * p
    assert p ** 0 == LaurentPoly.one()
