from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from detfam.poly import (
    MPoly,
    NotDivisible,
    Poly,
    PolyParseError,
    RatFunc,
    content_and_primitive,
    laurent_binomial_power,
    parse_mpoly,
)

x = Poly.gen("x")


def test_univariate_arithmetic():
    assert (x + 1) * (x - 1) == x**2 - 1
    assert (x**2 - 1).exact_div(x + 1) == x - 1
    with pytest.raises(NotDivisible):
        (x**2 + 1).exact_div(x + 1)
    a = MPoly.gens("a")[0]
    assert ((a - 1) ** 2).eval(a=3) == 4


def test_content_and_primitive():
    assert content_and_primitive(2 * x + 4) == (2, x + 2)
    assert content_and_primitive(x.scale(Fraction(3, 2))) == (Fraction(3, 2), x)
    assert content_and_primitive(x**2 - 1) == (1, x**2 - 1)


def test_laurent_binomial_power():
    assert laurent_binomial_power(-1, 2).coefficient_list() == [1, -2, 1]
    assert laurent_binomial_power(1, 0).coefficient_list() == [1]
    assert laurent_binomial_power(1, 3).coefficient_list() == [1, 3, 3, 1]


def test_mpoly_canonical_equality():
    a, q = MPoly.gens("a", "q")
    p = (a + q) ** 2
    assert p - (a * a + 2 * a * q + q * q) == 0
    assert p == a * a + 2 * a * q + q * q
    assert (p.exact_div(a + q)) == a + q


def test_ratfunc_cross_multiplied_equality():
    a = MPoly.gens("a")[0]
    assert RatFunc(a * a - 1, a - 1) == RatFunc(a + 1)


def test_parse_mpoly_round_trip_and_errors():
    p = parse_mpoly("3*n^2*j - 2/5*j + 7")
    assert parse_mpoly(p.to_text()) == p
    assert parse_mpoly("2 n j") == parse_mpoly("2*n*j")
    assert parse_mpoly("(n+1)^2") == parse_mpoly("n^2+2*n+1")
    with pytest.raises(PolyParseError) as exc:
        parse_mpoly("n + * j")
    assert exc.value.pos == 4


_rats = st.fractions(min_value=-20, max_value=20, max_denominator=9)
_polys = st.lists(_rats, min_size=1, max_size=6).map(lambda cs: Poly(cs, "x"))


@given(_polys, _polys, _rats)
def test_eval_is_a_ring_homomorphism(p, q, v):
    assert (p * q)(v) == p(v) * q(v)
    assert (p + q)(v) == p(v) + q(v)


@given(_polys, _polys.filter(lambda q: not q.is_zero()))
def test_exact_division_inverts_multiplication(p, q):
    assert (p * q).exact_div(q) == p


_mterms = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2)),
    st.integers(1, 50) | _rats.filter(bool),
    max_size=6,
)


@given(_mterms)
def test_mpoly_text_round_trip(terms):
    p = MPoly(terms, ("n", "j", "x"))
    assert parse_mpoly(p.to_text()) == p


@given(_mterms, _mterms)
def test_mpoly_difference_zero_iff_equal(t1, t2):
    p, q = MPoly(t1, ("a", "q", "x")), MPoly(t2, ("a", "q", "x"))
    assert ((p - q) == 0) == (p == q)
