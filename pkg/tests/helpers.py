"""Random recurrences for round-trip tests."""

from __future__ import annotations

import random

from detfam import guess as g
from detfam.poly import MPoly

n_, j_ = MPoly.gens("n", "j")


def random_univariate(rng):
    order = rng.randint(1, 3)
    deg = rng.randint(0, 2)
    shifts = tuple((k,) for k in range(order, -1, -1))
    lead = MPoly.const(rng.choice([1, -1, 2, 3]))
    for _ in range(deg):
        lead = lead * (n_ + rng.randint(1, 3))
    coeffs = [lead]
    for _ in range(order):
        c = MPoly.const(rng.randint(-4, 4))
        for e in range(1, deg + 1):
            c = c + rng.randint(-3, 3) * n_**e
        coeffs.append(c)
    if all(c.is_zero() for c in coeffs[1:]):
        coeffs[-1] = MPoly.const(1)
    return g.Recurrence(g.ShiftSupport(shifts), tuple(coeffs)), deg


def random_bivariate(rng):
    shifts = ((1, 0), (0, 1), (0, 0))
    lead = MPoly.const(rng.choice([1, 2])) * (n_ + rng.randint(1, 2))
    coeffs = (lead, MPoly.const(rng.randint(1, 3)) + rng.randint(-2, 2) * j_,
              MPoly.const(rng.randint(-3, 3)) + rng.randint(-2, 2) * n_)
    return g.Recurrence(g.ShiftSupport(shifts), coeffs), 1


def round_trip(seed):
    rng = random.Random(seed)
    if seed % 4 == 3:
        rec, deg = random_bivariate(rng)
        N, M = 12, 30
        init = g.DataTable({(0, j): rng.randint(-9, 9) for j in range(M + N + 1)}, 2)
        domain = [(n, j) for n in range(N + 1) for j in range(M + N + 1 - n)]
    else:
        rec, deg = random_univariate(rng)
        order = len(rec.support) - 1
        init = g.DataTable({(k,): rng.randint(-9, 9) or 1 for k in range(order)})
        domain = range(0, 2 * (order + 1) * (deg + 1) + 30)
    data = g.unroll_recurrence(rec, init, domain).table
    basis = g.fit_recurrence(data, rec.support, deg)
    assert basis, seed
    assert g.span_contains(basis, rec), seed
    for r in basis:
        assert g.check_recurrence(r, data).ok
