from __future__ import annotations

from fractions import Fraction

from detfam import verify as v
from detfam.families import D, D2, D3, G, build_family
from detfam.report import FAIL, FALSIFIED, PASS, CheckItem, Report


def test_sumid_examples():
    assert v.sumid_sides(0, 0) == (7, 7)
    lhs, rhs = v.sumid_sides(0, 5)
    assert lhs == rhs
    assert v.verify_sumid(6, 6).ok


def test_lr_sandwich():
    L, R = v.lr_matrices(2)
    prod = v._matmul(v._matmul(L, build_family(D(2, 1, 2, 0), 2).tolist()), R)
    assert prod[0] == [2, 0]
    assert prod[1][1] == build_family(D(5, 3, 5, -1), 1)[0, 0]
    assert all(v.verify_lr_sandwich(n).ok for n in range(2, 6))


def test_ck3_and_ck5_examples():
    for s in (0, 1, 12):
        assert v.ck3_sum(s).is_zero()
    for triple in ((1, 0, 0), (1, 1, 0), (1, 0, 1)):
        r = v.ck5_sum(*triple)
        assert r.is_zero() and not r.coeffs


def test_ck6_examples():
    assert v.ck6_sum(1, 1, 0) == 7
    assert v.ck6_sum(1, 1, 1) == v.ck6_sum(1, 1, -1) == 6
    assert all(v.ck6_sum(4, 2, i) == v.ck6_sum(4, 2, -i) for i in range(9))


def test_ck6_outside_stated_range_is_recorded_not_asserted():
    rep = v.verify_ck6(1, 2, 3)
    assert rep.ok
    unasserted = [it for it in rep.items if not it.asserted]
    assert unasserted and any(not it.equal for it in unasserted)


def test_kernel_weight_at_zero_is_half_the_concatenated_weight():
    kw = v.kernel_weights(1, 0, 0)
    assert kw.weights[0] == Fraction(v.concatenated_zero_weight(1, 0, 0), 2)
    assert kw.x == -4


def test_kernel_combinations():
    assert v.verify_kernel(4, 1, 1).ok
    assert v.verify_kernel(6, 1, 2).ok
    assert v.verify_kernel(6, 1, 2, multiplicity=True).ok


def test_delannoy_relations_small():
    rep = v.verify_delannoy_relations(3, 2, product_span=2, product_k_max=2)
    assert rep.ok and len(rep.items) > 0


def test_qdet_small():
    rep = v.verify_qdet(4, samples=2, symbolic_max=3)
    assert rep.ok


def test_relation_examples():
    assert v.verify_relation(D(2, 1, 2, 0), D(1, 1, -1, -3), 1, Fraction(1, 8), [4]).ok
    assert v.verify_relation(G(1, 1, 0, -2), G(5, 2, 5, 1), -1, -2, range(2, 9)).ok
    assert v.verify_relation_id("cor62a", 8).ok
    rep = v.verify_relation(D(1, 1, 1, -1), D2.with_x(0), 0, Fraction(1, 2), range(2, 7))
    assert rep.ok
    assert v.verify_relation(D(1, 1, 1, -1), D3.with_x(1), 0, Fraction(1, 2), range(2, 7)).ok


def test_wrong_relation_fails():
    rep = v.verify_relation(D(2, 1, 2, 0), D(1, 1, -1, -3), 1, Fraction(1, 7), range(4, 6))
    assert rep.status == FAIL


def test_report_statuses():
    r = Report("t", "conjecture")
    r.add(CheckItem("a", False))
    assert r.status == FALSIFIED
    r = Report("t", "theorem")
    r.add(CheckItem("a", False, asserted=False))
    assert r.status == PASS


def test_expand_ids():
    ids = v.expand_ids(["det22", "all-conjectures", "det22"])
    assert ids[0] == "det22" and "MS1rec" in ids and len(ids) == len(set(ids))
    assert "sumid" in v.expand_ids(["all-proved"])


def test_verify_identity_dispatch():
    reps = v.verify_identity("CK1", 4)
    assert [r.id for r in reps] == ["CK1", "CK1.alt"]
    assert all(r.ok for r in reps)
    assert all(r.ok for r in v.verify_identity("prop4j", 6))
