from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from detfam.closedforms import eval_rhs
from detfam.detengine import (
    check_cofactor_sequence,
    cofactor_sequence,
    det,
    det_bareiss,
    det_cofactor_oracle,
    det_ratio_h3,
    determinant_sequence,
)
from detfam.families import DI_FRANCESCO, WARMUP, D, build_family
from detfam.guess import warmup_spec
from detfam.poly import MPoly, Poly, RatFunc


def test_small_determinants():
    assert det_bareiss([[2, 2], [4, 8]]) == 8
    assert det_bareiss([[int(i == j) for j in range(5)] for i in range(5)]) == 1
    assert det_bareiss([]) == 1
    assert det_cofactor_oracle([[7]]) == 7
    assert det_cofactor_oracle([[1, 2], [3, 4]]) == -2


def test_zero_pivot_needs_row_exchange():
    assert det_bareiss([[0, 1], [1, 0]]) == -1
    assert det_bareiss([[0, 0, 1], [0, 1, 0], [1, 0, 0]]) == -1
    assert det_bareiss([[1, 2], [2, 4]]) == 0


def test_difrancesco_ratios():
    seq = determinant_sequence(DI_FRANCESCO, 7)
    ratios = [Fraction(seq[n]) / seq[n - 1] for n in range(1, 7)]
    assert ratios == [4, 15, Fraction(832, 15), 204, Fraction(9728, 13), Fraction(16445, 6)]
    assert seq[1] == eval_rhs("DiFran", 2) == 8


def test_warmup_cofactors():
    x, a = MPoly.gens("x")[0], MPoly.gens("a")[0]
    c2 = cofactor_sequence(WARMUP, 2)
    assert c2.values[1] == 1
    assert RatFunc(c2.values[0]) == RatFunc(-x) if not isinstance(c2.values[0], RatFunc) else c2.values[0] == RatFunc(-x)
    c3 = cofactor_sequence(WARMUP, 3)
    assert c3.values[1] == RatFunc(-a * x - a + x, a - 1)
    assert cofactor_sequence(D(1, 1, 1, -1), 1).values == (1,)


def test_det_ratio_h3():
    assert det_ratio_h3(DI_FRANCESCO, 2) == 4
    # the ratio is (a-1)^(n-1)
    assert det_ratio_h3(warmup_spec(4, 0), 3) == 9
    assert det_ratio_h3(D(2, 1, 2, 0), 1) == build_family(D(2, 1, 2, 0), 1)[0, 0]


def test_h3_ratio_times_previous_det():
    for spec in (DI_FRANCESCO, D(1, 1, 1, -1), D(2, 1, 2, 0), warmup_spec(3, Fraction(1, 2))):
        for n in range(2, 11):
            assert det_ratio_h3(spec, n) * det(spec, n - 1) == det(spec, n)


def test_cofactor_sequence_resubstitution():
    for n in range(1, 8):
        m = build_family(DI_FRANCESCO, n)
        assert check_cofactor_sequence(m, cofactor_sequence(DI_FRANCESCO, n))
    assert check_cofactor_sequence(build_family(WARMUP, 3), cofactor_sequence(WARMUP, 3))


def test_oracle_agreement_on_rationals():
    rng = random.Random(1)
    for _ in range(200):
        n = rng.randint(1, 6)
        m = [[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n)] for _ in range(n)]
        assert det_bareiss(m) == det_cofactor_oracle(m)


def test_oracle_agreement_on_polynomials():
    rng = random.Random(2)
    for _ in range(50):
        n = rng.randint(1, 5)
        m = [[Poly([rng.randint(-4, 4) for _ in range(rng.randint(1, 3))], "x") for _ in range(n)]
             for _ in range(n)]
        assert det_bareiss(m) == det_cofactor_oracle(m)


_entry = st.fractions(min_value=-6, max_value=6, max_denominator=4)


@st.composite
def _matrices(draw):
    n = draw(st.integers(1, 5))
    return [[draw(_entry) for _ in range(n)] for _ in range(n)]


@given(_matrices(), _entry, st.data())
def test_row_scaling_and_swap(m, c, data):
    d = det_bareiss(m)
    i = data.draw(st.integers(0, len(m) - 1))
    scaled = [list(r) for r in m]
    scaled[i] = [c * e for e in scaled[i]]
    assert det_bareiss(scaled) == c * d
    if len(m) > 1:
        j = data.draw(st.integers(0, len(m) - 1).filter(lambda k: k != i))
        swapped = [list(r) for r in m]
        swapped[i], swapped[j] = swapped[j], swapped[i]
        assert det_bareiss(swapped) == -d
