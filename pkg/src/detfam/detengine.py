"""Exact determinants and the cofactor-sequence machinery.

The determinant is computed by fraction-free (Bareiss) elimination. Rows are
first scaled to have integral coefficients and stripped of their integer
content; the scales are divided back out at the end. The cofactor sequence
``c_{n,j}`` is obtained by solving the homogeneous system formed by the
first ``n-1`` rows with the normalisation ``c_{n,n-1} = 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import is_rational, norm, qdiv
from .families import FamilySpec, Matrix, build_family
from .poly import MPoly, Poly, RatFunc, as_mpoly


class SingularMinorError(ArithmeticError):
    """The leading ``(n-1) x (n-1)`` minor vanishes, so the kernel is not one-dimensional."""


def _rows(m) -> list[list]:
    if isinstance(m, Matrix):
        return m.tolist()
    return [list(r) for r in m]


def _is_zero(e) -> bool:
    return e == 0 if is_rational(e) else e.is_zero()


def _row_denominator(row) -> int:
    den = 1
    for e in row:
        cs = (e,) if is_rational(e) else e.coeffs
        for c in cs:
            if type(c) is Fraction:
                den = den * c.denominator // math.gcd(den, c.denominator)
    return den


def _row_content(row) -> int:
    g = 0
    for e in row:
        cs = (e,) if is_rational(e) else e.coeffs
        for c in cs:
            g = math.gcd(g, c)
            if g == 1:
                return 1
    return g


def _scale(e, c):
    if is_rational(e):
        return norm(e * c)
    return e.scale(c)


def _normalize_rows(rows):
    """Make every row integral and primitive; return the rows and the total factor.

    The returned ``factor`` satisfies ``det(original) = det(result) / factor``.
    """
    factor = Fraction(1)
    out = []
    for row in rows:
        row = [norm(e) if is_rational(e) else e for e in row]
        d = _row_denominator(row)
        if d != 1:
            row = [_scale(e, d) for e in row]
            factor *= d
        g = _row_content(row)
        if g > 1:
            row = [_scale(e, Fraction(1, g)) for e in row]
            factor /= g
        out.append(row)
    return out, factor


def _exact(a, b):
    if is_rational(a) and is_rational(b):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("inexact division in fraction-free elimination")
        return q
    if is_rational(a):
        a = b.zero() + a
    return a.exact_div(b)


def det_bareiss(m):
    """Exact determinant of a square matrix over int, Rat, Poly or MPoly entries.

    The empty matrix has determinant 1.
    """
    rows = _rows(m)
    n = len(rows)
    if n == 0:
        return 1
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    if any(isinstance(e, RatFunc) for r in rows for e in r):
        return _det_ratfunc(rows)
    kinds = {type(e) for r in rows for e in r}
    if MPoly in kinds and Poly in kinds:
        rows = [[as_mpoly(e) for e in r] for r in rows]
    rows, factor = _normalize_rows(rows)
    sign = 1
    prev = 1
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if not _is_zero(rows[i][k])), None)
        if piv is None:
            return _zero_like(rows[0][0])
        if piv != k:
            rows[k], rows[piv] = rows[piv], rows[k]
            sign = -sign
        pk = rows[k][k]
        rk = rows[k]
        for i in range(k + 1, n):
            ri = rows[i]
            a = ri[k]
            if _is_zero(a):
                # row i only gets multiplied by the pivot
                for j in range(k + 1, n):
                    ri[j] = _exact(pk * ri[j], prev)
            else:
                for j in range(k + 1, n):
                    ri[j] = _exact(pk * ri[j] - a * rk[j], prev)
            ri[k] = 0
        prev = pk
    d = rows[n - 1][n - 1]
    if sign < 0:
        d = -d
    return _finish(d, factor)


def _zero_like(e):
    return 0 if is_rational(e) else e.zero()


def _finish(d, factor: Fraction):
    if factor == 1:
        return norm(d) if is_rational(d) else d
    if is_rational(d):
        return norm(Fraction(d) / factor)
    return d.scale(1 / factor)


def _det_ratfunc(rows):
    """Clear each row's denominators, take an MPoly determinant, divide back."""
    cleared = []
    extracted = MPoly.const(1)
    for row in rows:
        rf = [e if isinstance(e, RatFunc) else RatFunc(e) for e in row]
        den = MPoly.const(1)
        for e in rf:
            if not (e.den.is_constant() and e.den.constant_value() == 1) and den != e.den:
                den = den * e.den
        cleared.append([(e.num * den).exact_div(e.den) for e in rf])
        extracted = extracted * den
    return RatFunc(det_bareiss(cleared), extracted)


def det_cofactor_oracle(m):
    """Determinant by Laplace expansion along the first row (``n <= 7``)."""
    rows = _rows(m)
    n = len(rows)
    if n > 7:
        raise ValueError("cofactor oracle is limited to dimension 7")
    return _laplace(rows)


def _laplace(rows):
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        e = rows[0][j]
        if _is_zero(e):
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = e * _laplace(minor)
        total = total + term if j % 2 == 0 else total - term
    return norm(total) if is_rational(total) else total


def det(spec: FamilySpec, n: int):
    return det_bareiss(build_family(spec, n))


# ---------------------------------------------------------------------------
# cofactor sequences


@dataclass(frozen=True)
class CofactorSequence:
    """``values[j] = c_{n,j}`` for ``j = 0..n-1``; rationals or RatFuncs."""

    n: int
    values: tuple

    def __getitem__(self, j):
        return self.values[j]

    def __len__(self):
        return len(self.values)


def _solve_rational(rows: list[list], n: int) -> tuple:
    """Kernel vector of the first ``n-1`` rows with last component 1, over Q."""
    m = n - 1
    aug = [[Fraction(rows[i][j]) for j in range(m)] + [-Fraction(rows[i][m])] for i in range(m)]
    for k in range(m):
        piv = next((i for i in range(k, m) if aug[i][k] != 0), None)
        if piv is None:
            raise SingularMinorError(f"leading minor of order {m} vanishes")
        aug[k], aug[piv] = aug[piv], aug[k]
        inv = 1 / aug[k][k]
        rk = [v * inv for v in aug[k]]
        aug[k] = rk
        for i in range(m):
            if i != k and aug[i][k] != 0:
                f = aug[i][k]
                ri = aug[i]
                aug[i] = [ri[j] - f * rk[j] for j in range(m + 1)]
    return tuple(norm(aug[i][m]) for i in range(m)) + (1,)


def _solve_symbolic(rows: list[list], n: int) -> tuple:
    """Same as :func:`_solve_rational` over Q(vars), by fraction-free Gauss-Jordan."""
    m = n - 1
    aug = [[as_mpoly(rows[i][j]) for j in range(m)] + [-as_mpoly(rows[i][m])] for i in range(m)]
    aug, _ = _normalize_rows(aug)
    prev = MPoly.const(1)
    for k in range(m):
        piv = next((i for i in range(k, m) if not aug[i][k].is_zero()), None)
        if piv is None:
            raise SingularMinorError(f"leading minor of order {m} vanishes")
        aug[k], aug[piv] = aug[piv], aug[k]
        pk = aug[k][k]
        rk = aug[k]
        for i in range(m):
            if i == k:
                continue
            ri = aug[i]
            a = ri[k]
            aug[i] = [(pk * ri[j] - a * rk[j]).exact_div(prev) for j in range(m + 1)]
        prev = pk
    return tuple(RatFunc(aug[i][m], aug[i][i]) for i in range(m)) + (RatFunc(1),)


def cofactor_sequence_of(matrix, n: int | None = None) -> CofactorSequence:
    rows = _rows(matrix)
    n = len(rows) if n is None else n
    if n == 1:
        return CofactorSequence(1, (1,))
    symbolic = any(not is_rational(e) for r in rows[: n - 1] for e in r[:n])
    vals = _solve_symbolic(rows, n) if symbolic else _solve_rational(rows, n)
    return CofactorSequence(n, vals)


def cofactor_sequence(spec: FamilySpec, n: int) -> CofactorSequence:
    """Solve ``sum_j a_{i,j} c_{n,j} = 0`` (``i < n-1``) with ``c_{n,n-1} = 1``."""
    if n < 1:
        raise ValueError("n must be positive")
    return cofactor_sequence_of(build_family(spec, n), n)


def det_ratio_h3(spec: FamilySpec, n: int):
    """``sum_j a_{n-1,j} c_{n,j}``, which equals ``det A_n / det A_{n-1}``."""
    m = build_family(spec, n)
    c = cofactor_sequence_of(m, n)
    last = m.rows[n - 1]
    total = 0
    for a, cj in zip(last, c.values):
        if isinstance(cj, RatFunc) or not is_rational(a):
            total = RatFunc(as_mpoly(a)) * cj + total
        else:
            total = total + a * cj
    return norm(total) if is_rational(total) else total


def check_cofactor_sequence(matrix, seq: CofactorSequence) -> bool:
    """Re-substitute: ``c_{n,n-1} = 1`` and rows ``0..n-2`` annihilate ``c``."""
    rows = _rows(matrix)
    n = seq.n
    if seq.values[n - 1] != 1:
        return False
    for i in range(n - 1):
        acc = 0
        for a, cj in zip(rows[i], seq.values):
            if isinstance(cj, RatFunc) or not is_rational(a):
                acc = RatFunc(as_mpoly(a)) * cj + acc
            else:
                acc = acc + a * cj
        if not (acc == 0 if is_rational(acc) else acc.is_zero()):
            return False
    return True


def determinant_sequence(spec: FamilySpec, n_max: int) -> list:
    """``[det A_1, ..., det A_{n_max}]`` computed independently for each n."""
    return [det(spec, n) for n in range(1, n_max + 1)]


def ratio(a, b):
    return qdiv(a, b) if is_rational(a) and is_rational(b) else RatFunc(as_mpoly(a), as_mpoly(b))


__all__ = [
    "CofactorSequence",
    "SingularMinorError",
    "check_cofactor_sequence",
    "cofactor_sequence",
    "cofactor_sequence_of",
    "det",
    "det_bareiss",
    "det_cofactor_oracle",
    "det_ratio_h3",
    "determinant_sequence",
    "ratio",
]
