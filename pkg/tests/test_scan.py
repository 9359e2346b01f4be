from __future__ import annotations

import json
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from detfam import scan as sc
from detfam.closedforms import eval_rhs
from detfam.families import D


def test_factor_examples():
    assert sc.factor_integer(8).multiset() == [2, 2, 2]
    assert sc.factor_integer(832).primes == ((2, 6), (13, 1))
    assert sc.factor_integer(16445).multiset() == [5, 11, 13, 23]
    assert sc.factor_integer(-1).multiset() == [] and sc.factor_integer(-1).sign == -1
    with pytest.raises(ValueError):
        sc.factor_integer(0)


def test_factor_large_composites():
    n = (2**61 - 1) * 1000003 * 999983
    assert sc.factor_integer(n).multiset() == [999983, 1000003, 2**61 - 1]
    p, q = 1000000007, 998244353
    assert sc.factor_integer(p * q * q).multiset() == [q, q, p]


def test_factor_rationals_and_probable_flag():
    f = sc.factor_integer(Fraction(-9, 40))
    assert f.value == Fraction(-9, 40) and dict(f.primes) == {2: -3, 3: 2, 5: -1}
    big = 2**89 - 1
    f = sc.factor_integer(big)
    assert f.multiset() == [big] and f.probable == (big,)
    assert sc.factor_integer(2**61 - 1).probable == ()


@given(st.integers(1, 10**15), st.booleans())
def test_factorization_multiplies_back(v, neg):
    v = -v if neg else v
    f = sc.factor_integer(v)
    assert f.value == v
    assert math.prod(f.multiset()) == abs(v)


def test_smoothness_examples():
    difran = [eval_rhs("DiFran", n) for n in range(1, 9)]
    assert sc.is_smooth_sequence(difran, 8, 7)
    assert not sc.is_smooth_sequence([1, 2, 6, 1009], 4, 7)
    assert sc.is_smooth_sequence([1] * 8, 8, 7)
    assert not sc.is_smooth_sequence([1, 0, 1, 1], 4, 7)
    with pytest.raises(ValueError):
        sc.is_smooth_sequence([], 4, 7)


def test_config_parsing():
    text = """
    # a comment
    family = D
    range α = -1..1
    range beta = 0..1
    range gamma = 0..0
    range delta = -1..0
    N = 6
    slope = 5
    relation_shift_max = 2
    """
    cfg = sc.ScanConfig.parse(text)
    assert (cfg.base, cfg.step, cfg.alpha, cfg.n_max, cfg.slope) == (2, 2, (-1, 1), 6, 5)
    assert len(cfg.specs()) == 3 * 2 * 1 * 2


def test_config_errors():
    with pytest.raises(sc.ConfigError):
        sc.ScanConfig.parse("range zeta = 0..1")
    with pytest.raises(sc.ConfigError):
        sc.ScanConfig.parse("N = 3")
    with pytest.raises(sc.ConfigError):
        sc.ScanConfig.parse("slope = 0")
    with pytest.raises(sc.ConfigError):
        sc.ScanConfig.parse("range alpha = 2..1")
    with pytest.raises(sc.ConfigError):
        sc.ScanConfig.parse("family = Q")


def test_scan_spec_classification():
    rep = sc.scan_spec(D(1, 1, 1, -1), 8, 7)
    assert rep.smooth and rep.status == sc.SMOOTH
    assert [f.value for f in rep.factors] == rep.values
    zero = sc.scan_spec(D(2, 0, 0, 0), 8, 7)
    assert zero.status == sc.ZERO and not zero.smooth and zero.zero_at


def test_find_relation():
    a = [1, 2, 4, 8, 16, 32]
    b = [3, 6, 12, 24, 48, 96]
    assert sc.find_relation(a, b, 0) == Fraction(1, 3)
    assert sc.find_relation(a, b, 1) == Fraction(2, 3)
    assert sc.find_relation(a, [1, 1, 1, 1, 1, 2], 0) is None


def test_equivalence_key_is_shift_invariant():
    s = D(1, 1, 1, -1)
    assert sc.equivalence_key(s) == sc.equivalence_key(s.shifted(2, 1, 3, 1))


def test_small_scan_is_deterministic_across_jobs():
    cfg = sc.ScanConfig(alpha=(0, 2), beta=(0, 1), gamma=(-1, 2), delta=(-3, 0), n_max=6)
    a = sc.to_jsonl(sc.run_scan(cfg, jobs=1))
    b = sc.to_jsonl(sc.run_scan(cfg, jobs=2))
    assert a == b
    lines = [json.loads(x) for x in a.splitlines()]
    assert len(lines) == 3 * 2 * 4 * 4 and all(x["schema"] == 1 for x in lines)
    assert sc.to_csv(sc.run_scan(cfg, jobs=1)).startswith("spec,alpha")
