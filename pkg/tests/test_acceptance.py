"""Acceptance criteria, checked exactly. Each test records one PASS/FAIL line."""

from __future__ import annotations

import random
import time
from fractions import Fraction

import pytest
from acceptance_log import record
from helpers import round_trip

from detfam import closedforms as cf
from detfam import guess as g
from detfam import scan as sc
from detfam import verify as v
from detfam.detengine import det, det_bareiss, det_cofactor_oracle, determinant_sequence
from detfam.families import DI_FRANCESCO, D
from detfam.poly import Poly


def _failures(reports):
    out = []
    for r in reports:
        if r.error:
            out.append(f"{r.id}: {r.error}")
        out += [f"{r.id} {it.label} n={it.n} x={it.x}" for it in r.failures]
    return out


def _finish(number, summary, problems, t0, budget=None):
    elapsed = time.perf_counter() - t0
    if budget is not None and elapsed > budget:
        problems = problems + [f"took {elapsed:.1f}s, budget {budget}s"]
    ok = not problems
    record(number, ok, summary if ok else f"{summary}; {problems[:3]}", elapsed)
    assert ok, problems


def test_criterion_01_difrancesco():
    t0 = time.perf_counter()
    seq = determinant_sequence(DI_FRANCESCO, 12)
    problems = [f"n={n}" for n in range(1, 13) if seq[n - 1] != cf.eval_rhs("DiFran", n)]
    ratios = [Fraction(seq[n]) / seq[n - 1] for n in range(1, 7)]
    if ratios != [4, 15, Fraction(832, 15), 204, Fraction(9728, 13), Fraction(16445, 6)]:
        problems.append(f"ratios {ratios}")
    _finish(1, "Di Francesco det = RHS for n <= 12, ratios 4, 15, 832/15, ...", problems, t0, 10)


def test_criterion_02_ck1_ck2():
    t0 = time.perf_counter()
    reps = []
    for ident in ("CK1", "CK2"):
        reps.append(v.verify_closed_form_id(ident, 12, xs=(0, 1, 2, 3, Fraction(7, 2), 5), symbolic_n_max=8))
        reps.append(v.verify_alt_forms(ident, 10, range(0, 7)))
    symbolic = [it for r in reps for it in r.items if it.label.startswith("symbolic")]
    problems = _failures(reps) + ([] if len(symbolic) >= 16 else ["symbolic checks missing"])
    _finish(2, "CK1/CK2 polynomial in x for n <= 8, numeric for n <= 12, both forms agree",
            problems, t0, 120)


def test_criterion_03_warmup():
    t0 = time.perf_counter()
    rep = v.verify_warmup(7)
    labels = {it.label for it in rep.items}
    needed = {"c[2,0]", "c[3,1]", "H3"}
    problems = _failures([rep]) + [f"missing {k}" for k in needed if not any(l.startswith(k) for l in labels)]
    _finish(3, "warmup det = 2(a-1)^C(n,2) for n <= 7, c_{2,0}, c_{3,1} and the H3 recurrence",
            problems, t0)


def test_criterion_04_proved_families():
    t0 = time.perf_counter()
    reps = []
    for ident in cf.GROUPS["det22"] + cf.GROUPS["cor62"] + cf.GROUPS["det24"] + ["detx41"]:
        reps += v.verify_identity(ident, 10)
    for ident in cf.GROUPS["det33"]:
        reps += v.verify_identity(ident, 8)
    checked = sum(1 for r in reps for it in r.items if it.asserted)
    _finish(4, f"det22, cor62, det24, detx41 (n <= 10) and det33 (n <= 8) with relations, {checked} checks",
            _failures(reps), t0, 300)


def test_criterion_05_pol():
    t0 = time.perf_counter()
    rep = v.verify_pol(10)
    problems = _failures([rep])
    if cf.pol_extract(2).pol != Poly([60, 31, 3]).scale(Fraction(1, 3)):
        problems.append("Pol_2")
    if cf.pol_extract(3).pol != Poly([7680, 6956, 2061, 234, 9]).scale(Fraction(1, 9)):
        problems.append("Pol_3")
    residuals = [it for it in rep.items if it.label.startswith("recurrence")]
    if sorted(it.n for it in residuals) != list(range(1, 8)):
        problems.append(f"recurrence residuals at {[it.n for it in residuals]}")
    _finish(5, "Pol_n monic of degree 2n-2 for n <= 10, Pol_2, Pol_3, zero residuals n = 1..7",
            problems, t0, 300)


def test_criterion_06_delannoy():
    t0 = time.perf_counter()
    rep = v.verify_delannoy_relations(8, 6, product_span=6, product_k_max=6)
    _finish(6, "Delannoy relations k <= 8, y <= 6 and the product formula k <= 6",
            _failures([rep]), t0)


def test_criterion_07_lemma_suite():
    t0 = time.perf_counter()
    reps = [v.verify_ck3(12), v.verify_ck5_grid(10), v.verify_ck6(5, 5, 10), v.verify_sumid(6, 6)]
    reps += [v.verify_lr_sandwich(n) for n in range(2, 9)]
    reps.append(v.verify_kernel_suite(12, 3, multiplicity_n_max=8))
    reps += [v.verify_small_factors(8), v.verify_ms1_degree(8)]
    _finish(7, "ck3, ck5, ck6, sum identity, LR sandwich, kernel combinations, degree checks",
            _failures(reps), t0)


def test_criterion_08_conjectures():
    t0 = time.perf_counter()
    reps = []
    for ident in cf.GROUPS["det33x"] + ["conj4j"] + cf.GROUPS["prop4j"] + cf.GROUPS["det42"]:
        reps += v.verify_identity(ident, 8)
    problems = _failures(reps)
    for n in range(1, 9):
        if not isinstance(cf.eval_rhs("conj4j", n), (int, Fraction)):
            problems.append(f"conj4j n={n} not rational")
    _finish(8, "det33x, conj4j, prop4j and det42 not falsified for n <= 8",
            problems, t0)


def test_criterion_09_qdet():
    t0 = time.perf_counter()
    rep = v.verify_qdet(8, samples=5, symbolic_max=5)
    _finish(9, "q-identity symbolic for n <= 5, at 5 random points for n <= 8", _failures([rep]), t0)


def _found_supports(data, degree):
    found = set()
    for text in g.DIFRAN_SUPPORTS:
        sup = g.ShiftSupport.parse(text, 2)
        recs = g.fit_recurrence(data, sup, degree)
        if recs and any(r.effective_support().normalized() == sup.normalized() for r in recs) \
                and g.is_minimal_support(data, sup, degree):
            found.add(sup.normalized())
    return found


@pytest.mark.xfail(strict=True, raises=g.InsufficientData,
                   reason="n <= 20 gives fewer equations than unknowns at the needed degree")
def test_criterion_10a_guessing_n20():
    t0 = time.perf_counter()
    data = g.builtin_data("difran-c", 20)
    try:
        _found_supports(data, 11)
    except g.InsufficientData as e:
        record("10a", False, f"Di Francesco supports from n <= 20: {e}",
               time.perf_counter() - t0)
        raise
    record("10a", True, "Di Francesco supports from n <= 20", time.perf_counter() - t0)


def test_criterion_10b_guessing_extended():
    t0 = time.perf_counter()
    data = g.builtin_data("difran-c", 40)
    expected = {g.ShiftSupport.parse(s, 2).normalized() for s in g.DIFRAN_SUPPORTS}
    problems = []
    found = _found_supports(data, 11)
    if found != expected:
        problems.append(f"found {len(found)} of 3 supports")
    held = g.builtin_data("difran-c", 45)
    for text in g.DIFRAN_SUPPORTS:
        first = g.fit_recurrence(data, text, 11)[0]
        if not g.check_recurrence(first, held).ok:
            problems.append(f"{text} fails on n <= 45")
    for seed in range(20):
        try:
            round_trip(seed)
        except AssertionError:
            problems.append(f"round trip seed {seed}")
    _finish("10b", "Di Francesco supports from n <= 40 (minimal, checked on n <= 45); 20 round trips",
            problems, t0)


def test_criterion_11_scan():
    t0 = time.perf_counter()
    cfg = sc.ScanConfig(alpha=(-2, 2), beta=(-2, 2), gamma=(-4, 4), delta=(-4, 4), n_max=8, slope=7)
    reports = sc.run_scan(cfg, jobs=1)
    problems = []
    by_spec = {r.spec.to_text(): r for r in reports}
    inside = set()
    for ident in cf.GROUPS["det22"]:
        rec = cf.get_identity(ident)
        specs = [rec.spec] if isinstance(rec, cf.ClosedForm) else [s for _, s, _ in rec.terms]
        for s in specs:
            if s.to_text() in by_spec:
                inside.add(s.to_text())
    problems += [f"{s} not flagged" for s in sorted(inside) if not by_spec[s].smooth]
    rels = by_spec["D[2,1,2,0]"].relations
    if not any(r.other == "D[1,1,-1,-3]" and r.shift == 1 and r.constant == Fraction(1, 8) for r in rels):
        problems.append("relation 1/8 with shift 1 not found")
    if by_spec["D[2,0,0,0]"].smooth:
        problems.append("D[2,0,0,0] flagged")
    if sc.to_jsonl(reports) != sc.to_jsonl(sc.run_scan(cfg, jobs=2)):
        problems.append("output differs between 1 and 2 workers")
    _finish(11, f"D box scan flags all {len(inside)} in-box det22 specs, finds 1/8 with shift 1, "
                "identical for 1 and 2 workers", problems, t0, 600)


def test_criterion_12_oracle_equivalence():
    t0 = time.perf_counter()
    rng = random.Random(12)
    problems = []
    for k in range(200):
        n = rng.randint(1, 6)
        m = [[Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(n)] for _ in range(n)]
        if det_bareiss(m) != det_cofactor_oracle(m):
            problems.append(f"rational matrix {k}")
    for k in range(50):
        n = rng.randint(1, 6)
        m = [[Poly([rng.randint(-5, 5) for _ in range(rng.randint(1, 4))], "x") for _ in range(n)]
             for _ in range(n)]
        if det_bareiss(m) != det_cofactor_oracle(m):
            problems.append(f"polynomial matrix {k}")
    if det(D(1, 1, 1, -1), 6) != det_cofactor_oracle([[D(1, 1, 1, -1).entry(i, j) for j in range(6)]
                                                      for i in range(6)]):
        problems.append("family matrix")
    _finish(12, "Bareiss = cofactor oracle on 200 rational and 50 polynomial matrices", problems, t0)
