from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from detfam import guess as g
from detfam.families import DI_FRANCESCO
from detfam.detengine import cofactor_sequence
from detfam.poly import MPoly
from helpers import random_univariate, round_trip

n_, j_ = MPoly.gens("n", "j")


def test_shift_support_parsing():
    s = g.ShiftSupport.parse("Sj2,SnSj,Sn,1")
    assert s.shifts == ((0, 2), (1, 1), (1, 0), (0, 0))
    assert s.to_text() == "Sj2,SnSj,Sn,1"
    assert g.ShiftSupport.parse("(1,0),(0,0)").shifts == ((1, 0), (0, 0))
    assert s.leading() == (1, 1)
    assert sorted(s.maximal()) == [(0, 2), (1, 1)]
    with pytest.raises(ValueError):
        g.ShiftSupport.parse("Sn,Sn")
    with pytest.raises(ValueError):
        g.ShiftSupport.parse("Sx")


def test_data_table_missing_is_not_zero():
    t = g.DataTable({(0,): 0, (2,): 5})
    assert (0,) in t and (1,) not in t
    assert g.DataTable.from_csv(t.to_csv()).values == t.values


def test_fit_geometric_and_factorial():
    pow2 = g.builtin_data("pow2")
    [rec] = g.fit_recurrence(pow2, "Sn,1", 0)
    assert rec.same_up_to_scaling(g.Recurrence(g.ShiftSupport(((1,), (0,))), (1, -2)))
    fact = g.builtin_data("factorial")
    for method in ("fraction-free", "modular"):
        [rec] = g.fit_recurrence(fact, "Sn,1", 1, method=method)
        expected = g.Recurrence(g.ShiftSupport(((1,), (0,))), (MPoly.const(1), -(n_ + 1)))
        assert rec.same_up_to_scaling(expected)


def test_insufficient_data():
    with pytest.raises(g.InsufficientData):
        g.fit_recurrence(g.builtin_data("pow2", 5), "Sn,1", 3)


def test_check_recurrence_on_long_range():
    [rec] = g.fit_recurrence(g.builtin_data("pow2"), "Sn,1", 0)
    rep = g.check_recurrence(rec, g.builtin_data("pow2", 100))
    assert rep.ok and rep.items[-1].lhs == 100


def test_check_recurrence_detects_wrong_data():
    [rec] = g.fit_recurrence(g.builtin_data("pow2"), "Sn,1", 0)
    bad = g.DataTable({(k,): 2**k + (k == 7) for k in range(12)})
    assert not g.check_recurrence(rec, bad).ok


def test_json_round_trip():
    rec = g.WARMUP_C_REC2
    assert g.Recurrence.from_json(rec.dumps()) == rec


def test_unroll_powers_and_fibonacci():
    rec = g.Recurrence(g.ShiftSupport(((1,), (0,))), (1, -2))
    out = g.unroll_recurrence(rec, g.DataTable({(1,): 2}), range(1, 11))
    assert [out.table[(k,)] for k in range(1, 11)] == [2**k for k in range(1, 11)]
    fib = g.Recurrence(g.ShiftSupport(((2,), (1,), (0,))), (1, -1, -1))
    out = g.unroll_recurrence(fib, g.DataTable({(0,): 0, (1,): 1}), range(0, 30))
    a, b = 0, 1
    for k in range(30):
        assert out.table[(k,)] == a
        a, b = b, a + b
    assert not out.blocked


def test_unroll_rejects_inconsistent_initial_values():
    rec = g.Recurrence(g.ShiftSupport(((1,), (0,))), (1, -2))
    with pytest.raises(g.InconsistentData):
        g.unroll_recurrence(rec, g.DataTable({(0,): 1, (1,): 3}), range(0, 4))


def test_unroll_reports_blocked_points():
    # (n - 3) f(n+1) = f(n): the leading coefficient vanishes at n = 3
    rec = g.Recurrence(g.ShiftSupport(((1,), (0,))), (n_ - 3, MPoly.const(-1)))
    out = g.unroll_recurrence(rec, g.DataTable({(0,): 1}), range(0, 6))
    assert (4,) in out.blocked


def test_warmup_c_recurrences_hold():
    data = g.builtin_data("warmup-c")
    for rec in (g.WARMUP_C_REC1, g.WARMUP_C_REC2):
        rep = g.check_recurrence(rec, data, params={"a": 5, "x": Fraction(2, 3)})
        assert rep.ok and rep.items[-1].lhs > 0


def test_warmup_h3_recurrence_symbolic():
    a = MPoly.gens("a")[0]
    rec = g.WARMUP_H3_REC
    s = {k: (a - 1) ** (k - 1) for k in range(1, 12)}
    for k in range(1, 9):
        acc = sum((c.eval(n=k) if "n" in c.vars else c) * s[k + sh[0]]
                  for sh, c in zip(rec.support, rec.coeffs))
        assert acc == 0


def test_warmup_diagonal_unrolls_to_ones():
    rec = g.WARMUP_DIAGONAL_REC
    params = {"a": 5, "x": Fraction(2, 3)}
    out = g.unroll_recurrence(rec, g.DataTable({(1,): 1, (2,): 1}), range(1, 16), params)
    assert all(out.table[(k,)] == 1 for k in range(1, 16))
    c = g.builtin_data("warmup-c")
    assert all(c[(k, k - 1)] == 1 for k in range(1, 13))


def test_cofactor_table_matches_cofactor_sequence():
    t = g.cofactor_table(DI_FRANCESCO, 6)
    for n in range(1, 7):
        assert tuple(t[(n, j)] for j in range(n)) == cofactor_sequence(DI_FRANCESCO, n).values


def test_holdout_tagging():
    recs, reps = g.fit_with_holdout(g.builtin_data("factorial", 40), "Sn,1", 1)
    assert len(recs) == 1 and all(r.ok for r in reps)
    assert recs[0].tag.startswith("conjectural, verified on") and recs[0].verified_on > 0


def test_nullspace_methods_agree():
    rng = random.Random(3)
    for _ in range(10):
        rows = [[rng.randint(-5, 5) for _ in range(7)] for _ in range(5)]
        a = g.nullspace(rows, 7, "fraction-free")
        b = g.nullspace(rows, 7, "modular")
        assert len(a) == len(b) == 7 - g._rank([[Fraction(v) for v in r] for r in rows])
        for v in a + b:
            assert all(sum(Fraction(x) * y for x, y in zip(r, v)) == 0 for r in rows)


def test_estimator_wrapper():
    est = g.RecurrenceGuesser(support="Sn,1", degree=1)
    assert est.get_params()["degree"] == 1
    est.fit(g.builtin_data("factorial"))
    assert est.score(g.builtin_data("factorial", 60)) == 1.0
    pred = est.predict({(0,): 1}, domain=range(0, 8))
    assert [pred[(k,)] for k in range(8)] == [math.factorial(k) for k in range(8)]


def test_monomial_ordering():
    ms = g.monomials(2, 1)
    assert ms[0] == (0, 0) and set(ms) == {(0, 0), (0, 1), (1, 0), (1, 1)}
    capped = g.monomials(2, (2, 1), total_degree=2)
    assert all(sum(e) <= 2 and e[0] <= 2 and e[1] <= 1 for e in capped)
    assert [sum(e) for e in capped] == sorted(sum(e) for e in capped)


# ---------------------------------------------------------------------------
# round trip on randomized recurrences


@pytest.mark.parametrize("seed", range(20))
def test_round_trip_randomized(seed):
    round_trip(seed)


@given(st.integers(0, 10**6))
def test_round_trip_property(seed):
    round_trip(seed)


@given(st.integers(0, 10**6))
def test_fitted_recurrence_passes_held_out_points(seed):
    rng = random.Random(seed)
    rec, _ = random_univariate(rng)
    order = len(rec.support) - 1
    init = g.DataTable({(k,): rng.randint(1, 9) for k in range(order)})
    data = g.unroll_recurrence(rec, init, range(0, 4 * (order + 1) * 3 + 20)).table
    recs, reps = g.fit_with_holdout(data, rec.support, 2)
    assert recs and all(r.ok for r in reps)
