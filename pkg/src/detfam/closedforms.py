"""Closed-form right-hand sides, keyed by identity id.

Each product formula is transcribed factor by factor. Gamma factors go
through :func:`gamma_product`: arguments with an integer difference are
paired into Pochhammer ratios, and what is left must be an integer or a
half-integer, whose ``sqrt(pi)`` is tracked and must cancel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .exact import (
    FactoredScalar,
    gamma_exact,
    gamma_ratio,
    norm,
    pochhammer,
    qpochhammer,
    rat,
)
from .families import (
    D2,
    D3,
    DETX41,
    DI_FRANCESCO,
    MS1,
    D,
    E,
    F,
    FamilySpec,
    G,
)
from .poly import MPoly, Poly


class OutOfRange(ValueError):
    """``n`` (or ``x``) lies outside an identity's stated range."""


# ---------------------------------------------------------------------------
# Gamma policy


def gamma_product(nums, dens) -> FactoredScalar:
    """``prod Gamma(nums) / prod Gamma(dens)`` as a factored scalar.

    Arguments that are not integers or half-integers must find a partner on
    the other side with an integer difference; everything else is evaluated
    singly.
    """
    nums = [Fraction(a) for a in nums]
    dens = [Fraction(b) for b in dens]
    out = FactoredScalar.from_rat(1)
    # pair the awkward arguments first, then anything else with an integer gap
    for awkward_only in (True, False):
        k = 0
        while k < len(nums):
            a = nums[k]
            if awkward_only and a.denominator <= 2:
                k += 1
                continue
            partner = next((t for t, b in enumerate(dens) if (a - b).denominator == 1), None)
            if partner is None:
                if a.denominator > 2:
                    raise ValueError(f"Gamma({a}) has no partner with integer difference")
                k += 1
                continue
            b = dens.pop(partner)
            nums.pop(k)
            out = out * FactoredScalar.from_rat(gamma_ratio(b, a))
        for b in dens:
            if b.denominator > 2:
                raise ValueError(f"Gamma({b}) has no partner with integer difference")
    for a in nums:
        out = out * gamma_exact(a)
    for b in dens:
        out = out / gamma_exact(b)
    return out


def _product(lo: int, hi: int, factor: Callable[[int], FactoredScalar]) -> FactoredScalar:
    out = FactoredScalar.from_rat(1)
    for i in range(lo, hi + 1):
        out = out * factor(i)
    return out


def _gterm(scalar, nums, dens) -> FactoredScalar:
    return FactoredScalar.from_rat(scalar) * gamma_product(nums, dens)


def _F(v) -> Fraction:
    return Fraction(v)


# ---------------------------------------------------------------------------
# identity records


@dataclass(frozen=True)
class ClosedForm:
    """``det(spec(x), n) = rhs(n, x)`` for ``n >= n_min`` (and ``n >= x`` if asked)."""

    id: str
    status: str
    rhs: Callable
    spec: FamilySpec | None = None
    spec_for_x: Callable | None = None
    n_min: int = 1
    parametric: bool = False
    symbolic_x: bool = False
    n_at_least_x: bool = False
    alt_rhs: Callable | None = None
    description: str = ""

    def family(self, x=None) -> FamilySpec:
        if self.spec_for_x is not None:
            return self.spec_for_x(x)
        if self.parametric and x is not None:
            return self.spec.with_x(x)
        return self.spec


@dataclass(frozen=True)
class Relation:
    """All ``coef * det(spec, n + shift)`` in ``terms`` are equal for ``n >= n_min``."""

    id: str
    status: str
    terms: tuple
    n_min: int
    description: str = ""


@dataclass(frozen=True)
class Special:
    """Identities with their own checking routine (MS1, MS1rec, D1, qdet, Warmup)."""

    id: str
    status: str
    description: str = ""
    n_min: int = 1
    extra: dict = field(default_factory=dict)


IDENTITIES: dict[str, object] = {}


def _register(rec):
    if rec.id in IDENTITIES:
        raise KeyError(f"duplicate identity id {rec.id}")
    IDENTITIES[rec.id] = rec
    return rec


def get_identity(ident: str):
    try:
        return IDENTITIES[ident]
    except KeyError:
        raise KeyError(f"unknown identity id {ident!r}") from None


# ---------------------------------------------------------------------------
# helpers for x


def _xval(x):
    return Poly.gen("x") if x is None else rat(x)


def _finalize(fs: FactoredScalar):
    return fs.finalize()


# ---------------------------------------------------------------------------
# Di Francesco and its parametric generalisations


def rhs_difran(n: int, x=None):
    total = Fraction(2)
    for i in range(1, n + 1):
        total *= Fraction(2 ** (i - 1) * math.factorial(4 * i - 2), math.factorial(n + 2 * i - 1))
    return norm(total)


def rhs_ck1(n: int, x=None):
    X = _xval(x)
    out = Fraction(2 ** (math.comb(n, 2) + 1))
    for i in range(n):
        out *= Fraction(math.factorial(i), math.factorial(2 * i + 1))
    acc = norm(out)
    for i in range(n // 2 + 1):
        acc = pochhammer(X + 4 * i + 1, n - 2 * i) * acc
    for i in range((n - 1) // 2 + 1):
        acc = pochhammer(X - 2 * i + 3 * n, n - 2 * i - 1) * acc
    return acc


def rhs_ck1_gamma(n: int, x):
    x = rat(x)
    return _finalize(FactoredScalar.from_rat(2) * _product(1, n, lambda i: _gterm(
        2 ** (2 * i - 2),
        [i, 2 * i + x, 4 * i + x - 1, _F(3 * i + x - 2) / 2],
        [2 * i, 3 * i + x, 3 * i + x - 2, _F(i + x) / 2],
    )))


def rhs_ck2(n: int, x=None):
    X = _xval(x)
    out = Fraction(2 ** (math.comb(n, 2) + 1))
    for i in range(n):
        out *= Fraction(math.factorial(i), math.factorial(2 * i))
    acc = norm(out)
    for i in range((n - 1) // 2 + 1):
        acc = pochhammer(X + 4 * i + 3, n - 2 * i - 1) * acc
    for i in range((n - 2) // 2 + 1):
        acc = pochhammer(X - 2 * i + 3 * n - 1, n - 2 * i - 2) * acc
    return acc


def rhs_ck2_gamma(n: int, x):
    x = rat(x)
    return _finalize(FactoredScalar.from_rat(2) * _product(1, n, lambda i: _gterm(
        2 ** (2 * i - 2),
        [i, 2 * i + x, 4 * i + x - 3, _F(3 * i + x - 1) / 2],
        [2 * i - 1, 3 * i + x - 1, 3 * i + x - 2, _F(i + x + 1) / 2],
    )))


def rhs_warmup(n: int, x=None):
    (a,) = MPoly.gens("a")
    return (a - 1) ** math.comb(n, 2) * 2


def rhs_delannoy_product(k: int, n: int):
    """Product formula for the Delannoy determinant ``D1(k; n)``."""
    num = 1
    i = 0
    while 2 * i <= k:
        for s in range(-2 * k + 4 * i + 1, -k + 2 * i + 1):
            num *= 2 * n + s
        for s in range(k - 2 * i, 2 * k - 4 * i - 2 + 1):
            num *= 2 * n + s
        i += 1
    den = 1
    for i in range(1, k):
        den *= (2 * i + 1) ** (k - i)
    return norm(Fraction(num, den))


# ---------------------------------------------------------------------------
# D family


def rhs_det22a(n, x=None):
    return _finalize(FactoredScalar.from_rat(-2) * _product(2, n, lambda i: _gterm(
        Fraction(8 * (2 * i - 3) * (2 * i - 1), i),
        [4 * i - 5, _F(i + 1) / 2], [3 * i - 2, _F(3 * i - 3) / 2])))


def rhs_det22b(n, x=None):
    return _finalize(_product(1, n, lambda i: _gterm(
        Fraction(3 * (2 * i - 1), 4 * (i + 2)),
        [4 * i + 3, _F(i + 1) / 2], [3 * i + 1, _F(3 * i + 5) / 2])))


def rhs_det22c(n, x=None):
    return _finalize(FactoredScalar.from_rat(-2) * _product(1, n, lambda i: _gterm(
        Fraction(2 * i - 1, 2),
        [4 * i - 3, _F(i) / 2], [3 * i - 2, _F(3 * i) / 2])))


def rhs_det22d(n, x=None):
    return _finalize(_product(1, n, lambda i: _gterm(
        1, [4 * i - 1, _F(i + 1) / 2], [3 * i, _F(3 * i - 1) / 2])))


def rhs_det22e(n, x=None):
    return _finalize(_product(1, n, lambda i: _gterm(
        1, [4 * i, _F(i + 2) / 2], [3 * i, _F(3 * i + 2) / 2])))


def rhs_det22f(n, x=None):
    return _finalize(FactoredScalar.from_rat(3) * _product(2, n, lambda i: _gterm(
        1, [4 * i, _F(i - 1) / 2], [3 * i + 1, _F(3 * i - 3) / 2])))


# ---------------------------------------------------------------------------
# E family


def rhs_det33a(n, x=None):
    return _finalize(FactoredScalar.from_rat(2) * _product(2, n, lambda i: _gterm(
        Fraction(2 ** (i + 1) * (2 * i - 1), i * (i + 1)),
        [4 * i - 5, _F(i + 2) / 3], [3 * i - 5, _F(4 * i - 1) / 3])))


def rhs_det33b(n, x=None):
    return _finalize(FactoredScalar.from_rat(-2) * _product(2, n, lambda i: _gterm(
        Fraction(2 ** (i + 1) * (2 * i - 1), i * (i + 1) ** 2),
        [4 * i - 4, _F(i) / 3], [3 * i - 5, _F(4 * i - 3) / 3])))


def rhs_det33c(n, x=None):
    return _finalize(_product(1, n, lambda i: _gterm(
        Fraction(2 ** (i + 1) * (3 * i - 2) * (3 * i - 1), (i + 1) * (i + 2) * (i + 3) * (i + 4)),
        [4 * i + 4, _F(i + 2) / 3], [3 * i + 1, _F(4 * i + 5) / 3])))


def rhs_det33d(n, x=None):
    return _finalize(_product(1, n, lambda i: _gterm(
        Fraction(2 ** (i + 1), i),
        [4 * i - 2, _F(i + 2) / 3], [3 * i - 2, _F(4 * i - 1) / 3])))


def rhs_det33e(n, x=None):
    return _finalize(_product(1, n, lambda i: _gterm(
        Fraction(2 ** i, 3 * i),
        [4 * i, _F(i + 1) / 3], [3 * i - 1, _F(4 * i + 1) / 3])))


def rhs_det33f(n, x=None):
    return _finalize(_product(1, n, lambda i: _gterm(
        2 ** i, [4 * i + 1, _F(i + 2) / 3], [3 * i + 1, _F(4 * i + 2) / 3])))


def rhs_det33g(n, x=None):
    return _finalize(FactoredScalar.from_rat(2) * _product(1, n, lambda i: _gterm(
        Fraction(2 ** i, 4 * 3),
        [4 * i - 1, _F(i) / 3], [3 * i - 1, _F(4 * i) / 3])))


def rhs_det33h(n, x=None):
    return _finalize(FactoredScalar.from_rat(2) * _product(1, n, lambda i: _gterm(
        Fraction(2 ** i, 8),
        [4 * i + 1, _F(i + 2) / 3], [3 * i + 1, _F(4 * i + 2) / 3])))


def xi(x: int) -> Fraction | int:
    """The prefactor ``Xi(x)`` of the parametric E-family evaluations."""
    return _finalize(_product(2, x, lambda i: _gterm(
        Fraction(3, 2), [i, 4 * i - 3, 4 * i - 2], [3 * i - 2, 3 * i - 2, 3 * i - 1])))


def mu(m: int, x: int) -> int:
    return 2 if (x - m) % 3 == 0 else 1


def rhs_det33x0(n, x):
    x = int(x)
    pre = 2 * mu(1, x) * xi(x) * (-1) ** (x // 3)
    return norm(pre * _finalize(_product(1, n, lambda i: _gterm(
        2 ** (i - 1), [4 * i - 3, _F(i + 1) / 3], [3 * i - 2, _F(4 * i - 2) / 3]))))


def rhs_det33x1(n, x):
    x = int(x)
    pre = 2 * mu(2, x) * xi(x) * (-1) ** ((x + 2) // 3)
    return norm(pre * _finalize(_product(1, n, lambda i: _gterm(
        Fraction(2 ** i, 4 * 3), [4 * i - 1, _F(i) / 3], [3 * i - 1, _F(4 * i) / 3]))))


def rhs_det33x2(n, x):
    x = int(x)
    pre = Fraction(mu(0, x), n) * xi(x) * (-1) ** ((x + 1) // 3)
    return norm(pre * _finalize(_product(2, n, lambda i: _gterm(
        Fraction(2 ** i, 8 * 9), [4 * i + 1, _F(i - 1) / 3], [3 * i, _F(4 * i + 2) / 3]))))


# ---------------------------------------------------------------------------
# F family


def rhs_det24a(n, x=None):
    return _finalize(FactoredScalar.from_rat(2) * _product(1, n, lambda i: _gterm(
        3 ** (i - 1), [3 * i - 1, _F(i + 1) / 2], [2 * i, _F(3 * i - 1) / 2])))


def rhs_det24b(n, x=None):
    return _finalize(FactoredScalar.from_rat(2) * _product(1, n, lambda i: _gterm(
        Fraction(3 ** (i - 1), 2), [3 * i, _F(i) / 2], [2 * i, _F(3 * i) / 2])))


def rhs_det24c(n, x=None):
    return _finalize(FactoredScalar.from_rat(2) * _product(1, n, lambda i: _gterm(
        3 ** i, [3 * i - 1, _F(i + 1) / 2], [2 * i, _F(3 * i - 1) / 2])))


def rhs_detx41(n, x=None):
    X = _xval(x)
    out = Fraction(2 ** (math.comb(n + 1, 2) + 1) * 3 ** math.comb(n, 2))
    for i in range(1, n + 1):
        out *= Fraction(math.factorial(i), math.factorial(2 * i))
    acc = norm(out)
    for i in range(n):
        acc = pochhammer(X + 3 * i + 1, n - i) * acc
    return acc


def rhs_detx41_gamma(n, x):
    x = rat(x)
    return _finalize(FactoredScalar.from_rat(2) * _product(1, n, lambda i: _gterm(
        2 ** (2 * i - 1) * 3 ** (i - 1), [i, _F(3 * i + x) / 2], [2 * i, _F(i + x) / 2])))


def ms1_prefactor(n: int):
    """Scalar and polynomial prefactors of the MS1 determinant."""
    if n < 1:
        raise OutOfRange("n must be positive")
    scalar = Fraction(2 * 6 ** math.comb(n, 2))
    for i in range(n):
        scalar *= Fraction(math.factorial(i), math.factorial(2 * i + 3))
    x = Poly.gen("x")
    poly = (x + 2) * (x + 3)
    for i in range(n):
        poly = poly * pochhammer(x + 3 * i + 1, n - i)
    return norm(scalar), poly


def ms1_recurrence_coefficients(n: int) -> tuple[Poly, Poly, Poly, Poly]:
    """Coefficients of ``Pol_{n+3}, Pol_{n+2}, Pol_{n+1}, Pol_n`` in the conjectured recurrence."""
    x = Poly.gen("x")
    c3 = Poly.const(3)
    c2 = (18 * n * n + 9 * n * x + 72 * n - 3 * x ** 2 - 3 * x + 49) * -2
    c1 = (135 * n ** 4 + 108 * n ** 3 * x + 810 * n ** 3 - 54 * n ** 2 * x ** 2
          + 108 * n ** 2 * x + 1395 * n ** 2 - 52 * n * x ** 3 - 510 * n * x ** 2
          - 1100 * n * x + 120 * n - 9 * x ** 4 - 152 * x ** 3 - 855 * x ** 2
          - 1780 * x - 1020)
    c0 = (Poly.const(n + 1) * (n - x - 2) * (n + x + 2) * (3 * n + x + 3)
          * (3 * n + x + 5) * (3 * n + x + 7)) * -6
    return c3, c2, c1, c0


MS1_POL_INITIAL = (
    Poly.const(1),
    Poly((60, 31, 3)).scale(Fraction(1, 3)),
    Poly((7680, 6956, 2061, 234, 9)).scale(Fraction(1, 9)),
)


def pol_from_recurrence(n: int) -> Poly:
    """``Pol_n`` unrolled from the conjectured recurrence and its initial values."""
    pols = list(MS1_POL_INITIAL)
    while len(pols) < n:
        m = len(pols) - 2
        c3, c2, c1, c0 = ms1_recurrence_coefficients(m)
        nxt = -(c2 * pols[m + 1] + c1 * pols[m] + c0 * pols[m - 1])
        pols.append(nxt.exact_div(c3))
    return pols[n - 1]


def rhs_ms1(n, x=None):
    scalar, poly = ms1_prefactor(n)
    value = poly.scale(scalar) * pol_from_recurrence(n)
    return value if x is None else value.eval(rat(x))


# ---------------------------------------------------------------------------
# G family


def rhs_conj4j(n, x=None) -> Fraction | int:
    fs = FactoredScalar.from_rat(2 ** (n * n - n + 1) * 3 ** (2 * n) * math.factorial(2 * n))
    fs = fs * FactoredScalar.prime_power(5, Fraction(-5, 8) * n * n + Fraction(5, 4) * n)
    fs = fs * FactoredScalar.from_rat(pochhammer(Fraction(2, 3), n))
    for i in range(1, n + 1):
        fs = fs * FactoredScalar.from_rat(Fraction(math.factorial(6 * i - 4), math.factorial(5 * i)))
    den = Fraction(1)
    for num, off in ((1, 3), (2, 2), (3, 1), (4, 0)):
        for i in range(1, (n + off) // 4 + 1):
            den *= pochhammer(Fraction(num, 5), n + off - 4 * i)
    fs = fs / den
    case = n % 4
    if case == 1:
        fs = fs * FactoredScalar.prime_power(5, Fraction(3, 8))
    elif case == 3:
        fs = fs * FactoredScalar.prime_power(5, Fraction(-1, 8))
    return _finalize(fs)


def rhs_det42a(n, x=None):
    return _finalize(_product(1, n, lambda i: _gterm(
        Fraction((2 * i - 1) * (4 * i - 3) * (4 * i - 1), i * (i + 1) * (i + 2) * (3 * i - 1)),
        [6 * i, _F(i + 3) / 4], [5 * i - 1, _F(5 * i + 3) / 4])))


def rhs_det42b(n, x=None):
    return _finalize(_product(1, n, lambda i: _gterm(
        Fraction(8 * (2 * i - 1) * (2 * i + 1) ** 2 * (4 * i - 1) * (4 * i + 1),
                 (i + 1) * (i + 2) * (i + 3) * (i + 4)),
        [6 * i + 2, _F(i + 2) / 4], [5 * i + 2, _F(5 * i + 6) / 4])))


def rhs_det42c(n, x=None):
    return _finalize(FactoredScalar.from_rat(-4) * _product(1, n, lambda i: _gterm(
        Fraction(3 * i - 2, 8), [6 * i - 5, _F(i) / 4], [5 * i - 4, _F(5 * i) / 4])))


def rhs_det42d(n, x=None):
    return _finalize(FactoredScalar.from_rat(2) * _product(1, n, lambda i: _gterm(
        1, [6 * i - 1, _F(i + 3) / 4], [5 * i, _F(5 * i - 1) / 4])))


def rhs_det42e(n, x=None):
    return _finalize(_product(1, n, lambda i: _gterm(
        Fraction(1, 2 * (2 * i - 1)), [6 * i - 1, _F(i + 2) / 4], [5 * i - 1, _F(5 * i - 2) / 4])))


# ---------------------------------------------------------------------------
# q-analogue


def rhs_qdet(n: int):
    """Right-hand side as an MPoly in (a, q, x)."""
    a, q, x = MPoly.gens("a", "q", "x")
    out = (-x) ** math.comb(n, 2) * q ** (-math.comb(n, 3)) * 2
    for i in range(n):
        out = out * qpochhammer(a * q ** i, q, i)
    return out


def rhs_qdet_at(n: int, q, a, x):
    q, a, x = Fraction(rat(q)), Fraction(rat(a)), Fraction(rat(x))
    out = 2 * q ** (-math.comb(n, 3)) * (-x) ** math.comb(n, 2)
    for i in range(n):
        out *= qpochhammer(a * q ** i, q, i)
    return norm(out)


# ---------------------------------------------------------------------------
# registry


def _rel(ident, status, n_min, *terms, description=""):
    return _register(Relation(ident, status, tuple(
        (Fraction(c), spec, shift) for c, spec, shift in terms), n_min, description))


T, C = "theorem", "conjecture"

_register(ClosedForm("DiFran", T, rhs_difran, DI_FRANCESCO,
                     description="Di Francesco determinant"))
_register(ClosedForm("CK1", T, rhs_ck1, D2, parametric=True, symbolic_x=True,
                     alt_rhs=rhs_ck1_gamma, description="D2(n;x), Pochhammer and Gamma forms"))
_register(ClosedForm("CK2", T, rhs_ck2, D3, parametric=True, symbolic_x=True,
                     alt_rhs=rhs_ck2_gamma, description="D3(n;x), Pochhammer and Gamma forms"))
_register(Special("Warmup", T, "det(a^i C(x+i+j-1,j) + C(x-i+j-1,j)) = 2(a-1)^C(n,2)"))
_register(Special("D1", T, "Delannoy determinant D1(k;n) product formula and its relations"))

for _id, _spec, _fn in (
    ("det22a", D(-2, 0, -1, -1), rhs_det22a),
    ("det22b", D(0, 2, 3, -1), rhs_det22b),
    ("det22c", D(1, 1, 0, -2), rhs_det22c),
    ("det22d", D(1, 1, 1, -1), rhs_det22d),
    ("det22e", D(2, 1, 2, 0), rhs_det22e),
    ("det22f", D(0, 1, 1, -1), rhs_det22f),
):
    _register(ClosedForm(_id, T, _fn, _spec))

_rel("det22g", T, 4, (1, D(2, 1, 2, 0), 0), (Fraction(1, 8), D(1, 1, -1, -3), 1),
     (Fraction(1, 40), D(0, 1, -4, -6), 2), (Fraction(-1, 24576), D(1, 2, -4, -8), 2))
_rel("det22h", T, 4, (1, D(1, 1, 1, -1), 0), (1, D(2, 1, 1, -1), 0),
     (Fraction(1, 3), D(0, 1, -2, -4), 1), (Fraction(-1, 32), D(1, 1, -2, -4), 1),
     (Fraction(-1, 224), D(1, 2, -2, -6), 1), (Fraction(-1, 168), D(0, 1, -5, -7), 2),
     (Fraction(-1, 3696), D(0, 2, -5, -9), 2), (Fraction(-1, 337920), D(1, 2, -5, -9), 2))
_rel("det22i", T, 4, (1, D(1, 1, 0, -2), 0), (Fraction(1, 5), D(0, 1, -3, -5), 1),
     (Fraction(1, 1008), D(1, 2, -3, -7), 1))
_rel("det22j", T, 4, (1, D(-2, 1, 0, -2), 0), (1, D(0, 2, 3, -1), -1))
_rel("det22k", T, 4, (1, D(2, 1, 1, -1), 0), (1, D(4, 2, 4, 0), -1))
_rel("det22l", T, 4, (1, D(1, 1, -2, -4), 0), (Fraction(-16, 5), D(3, 2, 1, -3), -1),
     (Fraction(64, 3), D(5, 3, 4, -2), -2), (-128, D(7, 4, 7, -1), -3))
_rel("det22m", T, 4, (1, D(1, 1, -1, -3), 0), (-4, D(3, 2, 2, -2), -1),
     (16, D(5, 3, 5, -1), -2))
_rel("det22n", T, 4, (1, D(1, 1, 0, -2), 0), (-2, D(3, 2, 3, -1), -1))
_rel("cor62a", T, 2, (2, D(1, 1, 1, -1), 0), (1, D3.with_x(-2), 1), (1, D3.with_x(1), 0),
     (1, D2.with_x(0), 0), (1, D2.with_x(3), -1))
_rel("cor62b", T, 2, (2, D(2, 1, 2, 0), 0), (1, D3.with_x(-1), 1), (1, D2.with_x(1), 0))
_rel("cor62c", T, 2, (-1, D(1, 1, 0, -2), 0), (1, D3.with_x(0), 0), (1, D2.with_x(2), -1))

for _id, _spec, _fn in (
    ("det33a", E(-3, 0, -1, -1), rhs_det33a),
    ("det33b", E(-3, 1, 0, -2), rhs_det33b),
    ("det33c", E(0, 3, 5, -1), rhs_det33c),
    ("det33d", E(0, 1, 1, -1), rhs_det33d),
    ("det33e", E(1, 1, 2, 0), rhs_det33e),
    ("det33f", E(3, 2, 3, -1), rhs_det33f),
    ("det33g", E(1, 0, 1, 1), rhs_det33g),
    ("det33h", E(2, 0, 2, 2), rhs_det33h),
):
    _register(ClosedForm(_id, T, _fn, _spec))

_rel("det33i", T, 3, (1, E(0, 0, 0, 0), 0), (Fraction(1, 2), E(0, 1, -1, -3), 0),
     (Fraction(1, 5), E(0, 2, -2, -6), 0))
_rel("det33j", T, 3, (1, E(1, 0, 1, 1), 0), (Fraction(-1, 84), E(1, 3, -2, -8), 0),
     (2, E(4, 2, 4, 0), -1), (Fraction(6, 5), E(4, 3, 3, -3), -1))
_rel("det33k", T, 3, (1, E(2, 0, 2, 2), 0), (2, E(5, 2, 5, 1), -1), (18, E(8, 4, 8, 0), -2),
     (Fraction(162, 5), E(8, 5, 7, -3), -2))
_rel("det33l", T, 3, (1, E(-3, 2, 1, -3), 0), (1, E(0, 3, 5, -1), -1))
_rel("det33m", T, 3, (1, E(0, 1, -1, -3), 0), (4, E(3, 2, 3, -1), -1))
_rel("det33n", T, 3, (1, E(1, 1, 0, -2), 0), (-2, E(4, 2, 4, 0), -1))
_rel("det33o", T, 3, (1, E(1, 2, -1, -5), 0), (-12, E(4, 3, 3, -3), -1),
     (-180, E(7, 4, 7, -1), -2))
_rel("det33p", T, 3, (1, E(2, 1, 1, -1), 0), (1, E(5, 2, 5, 1), -1))
_rel("det33q", T, 3, (1, E(2, 2, 0, -4), 0), (Fraction(15, 2), E(5, 3, 4, -2), -1),
     (-45, E(8, 4, 8, 0), -2))
_rel("det33r", T, 3, (1, E(2, 3, -1, -7), 0), (36, E(5, 4, 3, -5), -1),
     (Fraction(-13608, 5), E(8, 5, 7, -3), -2))

_register(ClosedForm("det33x0", C, rhs_det33x0, parametric=True, n_at_least_x=True,
                     spec_for_x=lambda x: E(0, int(x), -int(x), -3 * int(x))))
_register(ClosedForm("det33x1", C, rhs_det33x1, parametric=True, n_at_least_x=True,
                     spec_for_x=lambda x: E(1, int(x), 1 - int(x), 1 - 3 * int(x))))
_register(ClosedForm("det33x2", C, rhs_det33x2, parametric=True, n_at_least_x=True,
                     spec_for_x=lambda x: E(2, int(x), 2 - int(x), 2 - 3 * int(x))))

for _id, _spec, _fn in (
    ("det24a", F(1, 0, 1, 1), rhs_det24a),
    ("det24b", F(1, 0, 2, 2), rhs_det24b),
    ("det24c", F(1, 0, 3, 3), rhs_det24c),
):
    _register(ClosedForm(_id, T, _fn, _spec))

_rel("det24d", T, 4, (1, F(1, 0, 1, 1), 0), (Fraction(2, 3), F(1, 1, -1, -3), 0),
     (Fraction(1, 21), F(1, 2, -3, -7), 0))
_rel("det24e", T, 4, (1, F(1, 0, 2, 2), 0), (-2, F(1, 1, 0, -2), 0),
     (Fraction(2, 7), F(1, 2, -2, -6), 0))
_rel("det24f", T, 4, (1, F(1, 0, 3, 3), 0), (2, F(1, 1, 1, -1), 0),
     (Fraction(2, 5), F(1, 2, -1, -5), 0), (Fraction(1, 99), F(1, 3, -3, -9), 0))
_rel("det24g", T, 4, (1, F(1, 1, -1, -3), 0), (-6, F(3, 2, 2, -2), -1), (24, F(5, 3, 5, -1), -2))
_rel("det24h", T, 4, (1, F(1, 1, 0, -2), 0), (-2, F(3, 2, 3, -1), -1))

_register(ClosedForm("detx41", T, rhs_detx41, DETX41, parametric=True, symbolic_x=True,
                     alt_rhs=rhs_detx41_gamma))
_register(ClosedForm("MS1", C, rhs_ms1, MS1, parametric=True, symbolic_x=True,
                     description="prefactors times Pol_n unrolled from the conjectured recurrence"))
_register(Special("MS1rec", C, "conjectured third-order recurrence for Pol_n"))

_register(ClosedForm("conj4j", C, rhs_conj4j, G(3, 0, 3, 3)))
_rel("prop4j", T, 2, (1, G(0, 1, -2, -4), 0), (3, G(4, 2, 3, -1), -1), (3, G(8, 3, 8, 2), -2))
_rel("prop4j2", T, 2, (1, G(1, 1, 0, -2), 0), (-2, G(5, 2, 5, 1), -1))
_rel("prop4j3", T, 2, (1, G(3, 3, 2, -4), 0), (-20, G(7, 4, 7, -1), -1))

for _id, _spec, _fn in (
    ("det42a", G(0, 2, 3, -1), rhs_det42a),
    ("det42b", G(1, 3, 6, 0), rhs_det42b),
    ("det42c", G(1, 1, 0, -2), rhs_det42c),
    ("det42d", G(3, 0, 3, 3), rhs_det42d),
    ("det42e", G(2, 1, 2, 0), rhs_det42e),
):
    _register(ClosedForm(_id, C, _fn, _spec))

_rel("det42f", C, 3, (1, G(3, 0, 3, 3), 0), (Fraction(2, 3), G(0, 1, -2, -4), 1),
     (Fraction(-1, 672), G(1, 3, -2, -8), 1), (Fraction(1, 63), G(5, 4, 3, -5), 0),
     (Fraction(4, 1002001), G(6, 6, 3, -9), 0), (Fraction(-8, 5), G(9, 5, 8, -2), -1))
_rel("det42g", C, 3, (1, G(1, 1, 0, -2), 0), (Fraction(-1, 49), G(2, 3, 0, -6), 0),
     (Fraction(-2, 7), G(6, 4, 5, -3), -1), (Fraction(-4, 5577), G(7, 6, 5, -7), -1))
_rel("det42h", C, 3, (1, G(2, 1, 2, 0), 0), (2, G(7, 4, 7, -1), -1))

_register(Special("qdet", T, "q-analogue of the warmup determinant"))

# groups used by the CLI and the acceptance suite
GROUPS = {
    "det22": [k for k in IDENTITIES if k.startswith("det22")],
    "cor62": ["cor62a", "cor62b", "cor62c"],
    "det33": [k for k in IDENTITIES if k.startswith("det33") and "x" not in k],
    "det33x": ["det33x0", "det33x1", "det33x2"],
    "det24": [k for k in IDENTITIES if k.startswith("det24")],
    "prop4j": ["prop4j", "prop4j2", "prop4j3"],
    "det42": [k for k in IDENTITIES if k.startswith("det42")],
}


def eval_rhs(ident: str, n: int, x=None):
    """Exact right-hand side of a closed-form identity.

    ``x=None`` means symbolic x, allowed only for the Pochhammer forms.
    """
    rec = get_identity(ident)
    if ident == "Warmup":
        return rhs_warmup(n)
    if ident == "qdet":
        return rhs_qdet(n)
    if ident == "D1":
        raise OutOfRange("D1 takes (k, n); use rhs_delannoy_product")
    if not isinstance(rec, ClosedForm):
        raise KeyError(f"{ident} is not a closed-form identity")
    if n < rec.n_min:
        raise OutOfRange(f"{ident} needs n >= {rec.n_min}")
    if rec.parametric and x is None and not rec.symbolic_x:
        raise OutOfRange(f"{ident} needs a numeric x")
    if rec.n_at_least_x and n < int(x):
        raise OutOfRange(f"{ident} is stated for n >= x")
    if not rec.parametric and x is not None:
        raise OutOfRange(f"{ident} has no parameter x")
    return rec.rhs(n, x)


def eval_rhs_alt(ident: str, n: int, x):
    rec = get_identity(ident)
    if not isinstance(rec, ClosedForm) or rec.alt_rhs is None:
        raise KeyError(f"{ident} has no alternative form")
    return rec.alt_rhs(n, x)


# ---------------------------------------------------------------------------
# MS1: prefactor, Pol_n extraction and checks


class PolExtractionError(ArithmeticError):
    """The MS1 determinant does not have the stated shape at this n."""


@dataclass(frozen=True)
class PolRecord:
    n: int
    prefactor_scalar: Fraction | int
    prefactor_poly: Poly
    pol: Poly
    det: Poly


def ms1_det(n: int) -> Poly:
    from .detengine import det_bareiss
    from .families import build_family

    d = det_bareiss(build_family(MS1, n))
    return d if isinstance(d, Poly) else Poly.const(d)


def pol_extract(n: int, det_poly: Poly | None = None) -> PolRecord:
    """Divide the MS1 determinant by its prefactors; check monic of degree ``2n-2``."""
    d = ms1_det(n) if det_poly is None else det_poly
    scalar, poly = ms1_prefactor(n)
    try:
        pol = d.scale(Fraction(1) / scalar).exact_div(poly)
    except ArithmeticError as exc:
        raise PolExtractionError(f"n={n}: prefactor does not divide the determinant") from exc
    if pol.degree != 2 * n - 2:
        raise PolExtractionError(f"n={n}: Pol has degree {pol.degree}, expected {2 * n - 2}")
    if pol.lc != 1:
        raise PolExtractionError(f"n={n}: Pol has leading coefficient {pol.lc}")
    return PolRecord(n, scalar, poly, pol, d)


def ms1_recurrence_residual(pols: dict[int, Poly], n: int) -> Poly:
    """Residual of the conjectured recurrence linking ``Pol_n .. Pol_{n+3}``."""
    c3, c2, c1, c0 = ms1_recurrence_coefficients(n)
    return c3 * pols[n + 3] + c2 * pols[n + 2] + c1 * pols[n + 1] + c0 * pols[n]


def ms1_recurrence_check(n_max: int, pols: dict[int, Poly] | None = None) -> list[tuple[int, Poly]]:
    """Residuals for ``n = 1..n_max-3``; each should be the zero polynomial."""
    if n_max < 4:
        raise OutOfRange("the recurrence check needs n_max >= 4")
    if pols is None:
        pols = {m: pol_extract(m).pol for m in range(1, n_max + 1)}
    return [(n, ms1_recurrence_residual(pols, n)) for n in range(1, n_max - 2)]


def ms1_degree_bound(n: int) -> int:
    return math.comb(n + 1, 2) + 2 * n


def ms1_degree_leading_check(n: int, det_poly: Poly | None = None) -> dict:
    """Degree of the MS1 determinant and its leading coefficient against the prefactor."""
    d = ms1_det(n) if det_poly is None else det_poly
    scalar, _ = ms1_prefactor(n)
    expected_degree = ms1_degree_bound(n)
    return {
        "n": n,
        "degree": d.degree,
        "expected_degree": expected_degree,
        "leading": d.lc,
        "expected_leading": scalar,
        "ok": d.degree == expected_degree and d.lc == scalar,
    }
