from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from detfam.exact import (
    FactoredScalar,
    GammaPoleError,
    NonIntegralResult,
    binomial,
    binomial_reflective,
    gamma_exact,
    gamma_ratio,
    is_prime,
    pochhammer,
    qpochhammer,
    rat,
)
from detfam.poly import MPoly, Poly


def test_rat_coercion():
    assert rat("3/6") == Fraction(1, 2)
    assert rat("4/2") == 2 and type(rat("4/2")) is int
    assert rat(Fraction(6, 3)) == 2


def test_binomial_conventions():
    assert binomial(5, 2) == 10
    assert binomial(-1, 5) == -1
    assert binomial(5, -2) == 0
    assert binomial(Fraction(1, 2), 2) == Fraction(-1, 8)
    assert binomial_reflective(-1, -2) == -1
    assert binomial_reflective(-1, -1) == 1
    assert binomial_reflective(3, -1) == 0


def test_binomial_polynomial_upper():
    x = Poly.gen("x")
    b = binomial(x + 3, 3)
    assert b(0) == 1 and b(2) == 10


def test_gamma_values():
    assert gamma_exact(4).finalize() == 6
    g = gamma_exact(Fraction(1, 2))
    assert g.sqrt_pi_exp == 1 and g.residual == 1
    g = gamma_exact(Fraction(5, 2))
    assert g.sqrt_pi_exp == 1 and (g / gamma_exact(Fraction(1, 2))).finalize() == Fraction(3, 4)
    with pytest.raises(NonIntegralResult):
        gamma_exact(Fraction(1, 2)).finalize()


def test_gamma_ratio():
    assert gamma_ratio(Fraction(2, 3), Fraction(2, 3)) == 1
    assert gamma_ratio(Fraction(1, 3), Fraction(4, 3)) == Fraction(1, 3)
    assert gamma_ratio(Fraction(7, 3), Fraction(1, 3)) == Fraction(9, 4)
    with pytest.raises(GammaPoleError):
        gamma_ratio(-1, 2)


def test_qpochhammer():
    x, q = MPoly.gens("x", "q")
    assert qpochhammer(x, q, 0) == 1
    assert qpochhammer(2, Fraction(1, 2), 2) == 0
    assert qpochhammer(x, q, 1) == 1 - x


def test_fractional_prime_exponents_accumulate():
    a = FactoredScalar.prime_power(5, Fraction(3, 8))
    b = FactoredScalar.prime_power(5, Fraction(5, 8))
    assert (a * b).finalize() == 5
    with pytest.raises(NonIntegralResult):
        a.finalize()


def test_is_prime_small_and_known():
    primes = [p for p in range(200) if is_prime(p)]
    assert primes == [p for p in range(200) if p > 1 and all(p % d for d in range(2, p))]
    assert is_prime(2**61 - 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


@given(st.integers(0, 40), st.integers(0, 40))
def test_binomial_matches_factorials(a, n):
    if n <= a:
        assert binomial(a, n) == math.factorial(a) // (math.factorial(n) * math.factorial(a - n))


@given(st.fractions(min_value=-30, max_value=30, max_denominator=12), st.integers(-3, 12))
def test_pascal_rule(alpha, p):
    assert binomial(alpha, p) == binomial(alpha - 1, p) + binomial(alpha - 1, p - 1)


@given(st.integers(-20, 20), st.integers(-5, 20))
def test_pascal_rule_reflective_integers(a, p):
    # the reflective extension keeps Pascal's rule off the corner a = p = 0
    lhs = binomial_reflective(a, p)
    rhs = binomial_reflective(a - 1, p) + binomial_reflective(a - 1, p - 1)
    if not (a == 0 and p == 0):
        assert lhs == rhs


@given(st.fractions(min_value=-10, max_value=10, max_denominator=6), st.integers(0, 6), st.integers(0, 6))
def test_pochhammer_splits(alpha, p, q):
    assert pochhammer(alpha, p + q) == pochhammer(alpha, p) * pochhammer(alpha + p, q)


@given(st.sampled_from([Fraction(k, 3) for k in range(1, 12) if k % 3]), st.integers(0, 5), st.integers(0, 5))
def test_gamma_ratio_chain(a, d1, d2):
    b, c = a + d1, a + d1 + d2
    assert gamma_ratio(a, b) * gamma_ratio(b, c) == gamma_ratio(a, c)


@given(st.integers(0, 10), st.integers(0, 10))
def test_gamma_exact_vs_ratio_half_integers(k, l):
    m, n = Fraction(2 * k + 1, 2), Fraction(2 * l + 1, 2)
    assert (gamma_exact(m) / gamma_exact(n)).finalize() == gamma_ratio(n, m)
