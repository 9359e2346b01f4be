from __future__ import annotations

from fractions import Fraction

import pytest

from detfam import closedforms as cf
from detfam.detengine import det
from detfam.poly import MPoly, Poly

x = Poly.gen("x")


def test_rhs_examples():
    assert cf.eval_rhs("DiFran", 2) == 8
    assert cf.eval_rhs("CK1", 1) == 2 * (x + 1)
    a = MPoly.gens("a")[0]
    assert cf.eval_rhs("Warmup", 4) == 2 * (a - 1) ** 6
    assert cf.eval_rhs("det22d", 1) == 1


def test_rhs_range_errors():
    with pytest.raises(cf.OutOfRange):
        cf.eval_rhs("det33x0", 1, 3)
    with pytest.raises(cf.OutOfRange):
        cf.eval_rhs("det22a", 2, 1)
    with pytest.raises(KeyError):
        cf.get_identity("nope")


def test_registry_records_status_and_specs():
    assert cf.get_identity("DiFran").status == "theorem"
    assert cf.get_identity("MS1rec").status == "conjecture"
    for ident, rec in cf.IDENTITIES.items():
        if isinstance(rec, cf.Relation):
            assert rec.n_min >= 1 and len(rec.terms) >= 2


def test_closed_forms_match_determinants_small_n():
    for ident in ("det22a", "det22b", "det33a", "det24a", "det42a", "conj4j"):
        rec = cf.get_identity(ident)
        for n in range(1, 6):
            assert det(rec.spec, n) == cf.eval_rhs(ident, n), (ident, n)


def test_pochhammer_and_gamma_forms_agree():
    for ident in ("CK1", "CK2", "detx41"):
        for n in range(1, 7):
            for xv in range(0, 5):
                assert cf.eval_rhs(ident, n, xv) == cf.eval_rhs_alt(ident, n, xv)


def test_ms1_prefactor():
    s, p = cf.ms1_prefactor(1)
    assert s == Fraction(1, 3)
    assert p == (x + 1) * (x + 2) * (x + 3)
    assert cf.ms1_prefactor(2)[0] == Fraction(1, 60)


def test_pol_extract():
    assert cf.pol_extract(1).pol == Poly.const(1)
    assert cf.pol_extract(2).pol == Poly([60, 31, 3]).scale(Fraction(1, 3))
    assert cf.pol_extract(3).pol == Poly([7680, 6956, 2061, 234, 9]).scale(Fraction(1, 9))
    assert cf.pol_extract(4).pol.degree == 6


def test_pol_extract_rejects_wrong_shape():
    with pytest.raises(cf.PolExtractionError):
        cf.pol_extract(2, det_poly=cf.ms1_det(2) + 1)


def test_ms1_recurrence_first_instance():
    [(n, r)] = cf.ms1_recurrence_check(4)
    assert n == 1 and r.is_zero()


def test_ms1_degree_leading():
    d1 = cf.ms1_degree_leading_check(1)
    assert d1["degree"] == 3 and d1["leading"] == Fraction(1, 3) and d1["ok"]
    d2 = cf.ms1_degree_leading_check(2)
    assert d2["degree"] == 7 and d2["ok"]
    d3 = cf.ms1_degree_leading_check(3)
    assert d3["degree"] == cf.ms1_prefactor(3)[1].degree + 4


def test_conj4j_finalizes_to_rationals():
    for n in range(1, 9):
        v = cf.eval_rhs("conj4j", n)
        assert isinstance(v, (int, Fraction))
