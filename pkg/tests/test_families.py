from __future__ import annotations

from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from detfam.families import (
    DI_FRANCESCO,
    WARMUP,
    D,
    E,
    FamilySpec,
    QSpec,
    SpecParseError,
    build_delannoy_matrix,
    build_family,
    build_q_matrix,
    delannoy,
    parse_spec,
)
from detfam.poly import MPoly, Poly


def test_difrancesco_matrix():
    assert build_family(DI_FRANCESCO, 2).tolist() == [[2, 2], [4, 8]]


def test_warmup_and_d_examples():
    assert build_family(WARMUP, 1).tolist() == [[2]]
    assert build_family(D(1, 1, 1, -1), 1).tolist() == [[1]]


def test_negative_beta_gives_rational_entries():
    m = build_family(D(0, -2, 0, 0), 2)
    assert m[0, 0] == Fraction(1, 4) + 1


def test_parse_spec_round_trip():
    for text in ("D[1,1,1,-1]", "E[-3,0,-1,-1]", "F[1,0,x+1,x+1]", "G[3,0,x-3,x-3]",
                 "DiFrancesco", "MS1", "D[0,0,0,0]!strict"):
        assert parse_spec(text).to_text() == text
    assert parse_spec("D[0,0,0,0]!strict").convention == "strict"
    assert isinstance(parse_spec("Q"), QSpec)


def test_parse_spec_errors():
    with pytest.raises(SpecParseError):
        parse_spec("D[1,1")
    with pytest.raises(SpecParseError):
        parse_spec("D[1,1,x,2]")
    with pytest.raises(SpecParseError):
        parse_spec("Z[1,1,1,1]")


def test_spec_validation():
    with pytest.raises(ValueError):
        FamilySpec(2, 2, 0, 0, 0, 0, sign=3)
    with pytest.raises(ValueError):
        FamilySpec(2, 0, 0, 0, 0, 0)


def test_delannoy_values():
    assert delannoy(0, 7) == 1
    assert delannoy(1, 1) == 3
    assert delannoy(2, 2) == 13
    assert delannoy(-1, 3) == 0


def test_delannoy_symmetry():
    assert all(delannoy(i, j) == delannoy(j, i) for i in range(31) for j in range(31))


def _paths(i, j):
    if i < 0 or j < 0:
        return 0
    if i == 0 or j == 0:
        return 1
    return _paths(i - 1, j) + _paths(i, j - 1) + _paths(i - 1, j - 1)


def test_delannoy_matches_generating_function():
    # coefficients of 1/(1-u-v-uv) by truncated series inversion: s = 1 + (u+v+uv) s
    u, v = MPoly.gens("u", "v")
    step = u + v + u * v
    s = MPoly.const(1)
    for _ in range(17):
        s = 1 + step * s
        s = MPoly({e: c for e, c in s.terms.items() if e[0] <= 8 and e[1] <= 8}, s.vars)
    for i in range(9):
        for j in range(9):
            assert s.terms.get((i, j), 0) == delannoy(i, j) == _paths(i, j)


def test_delannoy_matrix_examples():
    # entry (i, j) is D(2j - i, i + n - k - 1) with 1-based indices
    assert build_delannoy_matrix(1, 3).tolist() == [[5]]
    assert build_delannoy_matrix(1, 2).tolist() == [[3]]
    assert build_delannoy_matrix(2, 2).tolist() == [[1, 1], [1, 5]]


def test_q_matrix_examples():
    m, factor = build_q_matrix(1)
    assert m.tolist() == [[2]]
    m, _ = build_q_matrix(2)
    a, q, x = MPoly.gens("a", "q", "x")
    assert m[1, 0] == a + 1
    assert m[0, 1] == 2 - 2 * x * q


def test_shift_structure():
    # bordering: the lower-right block of the shifted spec is the original spec
    for spec in (D(1, 1, 1, -1), D(2, 1, 2, 0), E(1, 1, 2, 0)):
        m = spec.step
        big = spec.shifted(-m, -1, -m - 1, 1 - m)
        for n in range(1, 6):
            b = build_family(big, n + 1).tolist()
            assert [r[1:] for r in b[1:]] == build_family(spec, n).tolist()


@given(st.integers(-2, 3), st.integers(-1, 2), st.integers(-3, 3), st.integers(-3, 3),
       st.fractions(min_value=-5, max_value=5, max_denominator=7))
def test_numeric_x_equals_symbolic_then_evaluated(a, b, c, d, r):
    # the reflective extension is not polynomial in x, so negative lower
    # indices are compared under the strict convention
    sym = D(a, b, c, d, x=True)
    if a < 0:
        sym = replace(sym, convention="strict")
    num = build_family(sym.with_x(r), 3).tolist()
    ev = [[e(r) if isinstance(e, Poly) else e for e in row] for row in build_family(sym, 3).tolist()]
    assert num == ev
