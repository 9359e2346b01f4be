"""Exact scalar kernel.

Rationals are :class:`fractions.Fraction` throughout (aliased ``Rat``); plain
``int`` is accepted anywhere a rational is, and results that happen to be
integral are handed back as ``int`` so the hot loops stay on native integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

Rat = Fraction


class GammaPoleError(ZeroDivisionError):
    """A Gamma ratio crossed a pole (a zero factor in its Pochhammer form)."""


class NonIntegralResult(ArithmeticError):
    """A factored value still carries sqrt(pi) or a fractional prime power."""


def rat(value) -> Fraction | int:
    """Coerce ``value`` (int, Fraction, ``"p/q"`` string) to an exact rational."""
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return norm(value)
    if isinstance(value, str):
        return norm(Fraction(value.strip()))
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def norm(c):
    """Demote integral Fractions to int."""
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def qdiv(a, b):
    """Exact quotient of two rationals, staying in ``int`` when possible."""
    if type(a) is int and type(b) is int:
        if b == 0:
            raise ZeroDivisionError("division by zero")
        q, r = divmod(a, b)
        return q if r == 0 else Fraction(a, b)
    return norm(Fraction(a) / b)


def is_rational(v) -> bool:
    return type(v) is int or type(v) is Fraction


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# the first 13 prime bases are a deterministic witness set below this bound
MR_DETERMINISTIC_LIMIT = 3317044064679887385961981


def is_prime(n: int) -> bool:
    """Miller-Rabin test; exact below :data:`MR_DETERMINISTIC_LIMIT`, probabilistic above."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorial(n: int) -> int:
    return math.factorial(n)


def binomial(alpha, p: int):
    """Binomial coefficient with the falling-factorial convention.

    ``binomial(alpha, p)`` is ``alpha (alpha-1) ... (alpha-p+1) / p!`` for
    ``p >= 0`` and ``0`` for ``p < 0``. ``alpha`` may be an int, a Fraction or
    any polynomial type supporting ``-``, ``*`` and scalar division.

    >>> binomial(-1, 5)
    -1
    >>> binomial(5, -2)
    0
    """
    if type(p) is not int:
        raise TypeError("lower index must be an integer")
    if p < 0:
        return 0
    if type(alpha) is int:
        if alpha >= 0:
            return math.comb(alpha, p)
        # upper negation: binom(-a, p) = (-1)^p binom(a+p-1, p)
        v = math.comb(p - alpha - 1, p)
        return -v if p & 1 else v
    if type(alpha) is Fraction:
        num = 1
        for k in range(p):
            num *= alpha - k
        return norm(Fraction(num) / math.factorial(p))
    if p == 0:
        return alpha.one()
    acc = alpha
    for k in range(1, p):
        acc = acc * (alpha - k)
    return acc.scale(Fraction(1, math.factorial(p)))


def binomial_reflective(alpha, p: int):
    """:func:`binomial` extended by ``C(a, p) = C(a, a - p)`` for integers ``p <= a < 0``.

    This is the usual computer-algebra extension to negative integer
    arguments. It agrees with :func:`binomial` whenever ``p >= 0`` and is only
    nonzero for ``p < 0`` when ``alpha`` is a negative integer with ``p <= alpha``.

    >>> binomial_reflective(-1, -2)
    -1
    """
    if p < 0 and type(alpha) is int and alpha < 0 and p <= alpha:
        v = math.comb(-p - 1, alpha - p)
        return -v if (alpha - p) & 1 else v
    return binomial(alpha, p)


def pochhammer(alpha, p: int):
    """Rising factorial ``(alpha)_p``; equals 1 for ``p == 0``."""
    if p < 0:
        raise ValueError("pochhammer requires p >= 0")
    if is_rational(alpha):
        acc = 1
        for k in range(p):
            acc *= alpha + k
        return norm(acc)
    if p == 0:
        return alpha.one()
    acc = alpha
    for k in range(1, p):
        acc = acc * (alpha + k)
    return acc


def qpochhammer(alpha, q, p: int):
    """``(alpha; q)_p = prod_{k<p} (1 - q^k alpha)``; 1 when ``p == 0``."""
    if p < 0:
        raise ValueError("q-pochhammer requires p >= 0")
    acc = 1
    qk = 1
    for _ in range(p):
        acc = acc * (1 - qk * alpha)
        qk = qk * q
    return norm(acc) if is_rational(acc) else acc


@dataclass(frozen=True)
class FactoredScalar:
    """``sign * residual * prod p**e * sqrt(pi)**sqrt_pi_exp`` with rational ``e``.

    Fractional prime exponents and powers of sqrt(pi) may appear in
    intermediate products; :meth:`finalize` insists that they have cancelled.
    """

    sign: int
    prime_powers: tuple = ()
    sqrt_pi_exp: int = 0
    residual: Fraction = field(default=Fraction(1))

    @classmethod
    def from_rat(cls, v) -> "FactoredScalar":
        v = Fraction(v)
        if v == 0:
            return cls(0, (), 0, Fraction(0))
        return cls(1 if v > 0 else -1, (), 0, abs(v))

    @classmethod
    def prime_power(cls, p: int, e) -> "FactoredScalar":
        e = Fraction(e)
        return cls(1, ((p, e),) if e else (), 0, Fraction(1))

    @classmethod
    def sqrt_pi(cls, k: int = 1) -> "FactoredScalar":
        return cls(1, (), k, Fraction(1))

    def __mul__(self, other) -> "FactoredScalar":
        if not isinstance(other, FactoredScalar):
            other = FactoredScalar.from_rat(other)
        if self.sign == 0 or other.sign == 0:
            return FactoredScalar.from_rat(0)
        pp = dict(self.prime_powers)
        for p, e in other.prime_powers:
            pp[p] = pp.get(p, 0) + e
        return FactoredScalar(
            self.sign * other.sign,
            tuple(sorted((p, e) for p, e in pp.items() if e)),
            self.sqrt_pi_exp + other.sqrt_pi_exp,
            self.residual * other.residual,
        )

    __rmul__ = __mul__

    def inverse(self) -> "FactoredScalar":
        if self.sign == 0:
            raise ZeroDivisionError("inverse of zero")
        return FactoredScalar(
            self.sign,
            tuple((p, -e) for p, e in self.prime_powers),
            -self.sqrt_pi_exp,
            1 / self.residual,
        )

    def __truediv__(self, other) -> "FactoredScalar":
        if not isinstance(other, FactoredScalar):
            other = FactoredScalar.from_rat(other)
        return self * other.inverse()

    def __rtruediv__(self, other) -> "FactoredScalar":
        return FactoredScalar.from_rat(other) * self.inverse()

    def __pow__(self, k: int) -> "FactoredScalar":
        if k < 0:
            return self.inverse() ** (-k)
        out = FactoredScalar.from_rat(1)
        for _ in range(k):
            out = out * self
        return out

    def __neg__(self) -> "FactoredScalar":
        return FactoredScalar(-self.sign, self.prime_powers, self.sqrt_pi_exp, self.residual)

    def finalize(self):
        """Collapse to an exact rational; raises :class:`NonIntegralResult` otherwise."""
        if self.sign == 0:
            return 0
        if self.sqrt_pi_exp != 0:
            raise NonIntegralResult(f"sqrt(pi)^{self.sqrt_pi_exp} did not cancel")
        v = Fraction(self.residual)
        for p, e in self.prime_powers:
            if e.denominator != 1:
                raise NonIntegralResult(f"prime {p} left with exponent {e}")
            v *= Fraction(p) ** int(e)
        return norm(self.sign * v)


def gamma_exact(a) -> FactoredScalar:
    """Gamma at a positive integer or half-integer, with sqrt(pi) tracked symbolically."""
    a = Fraction(a)
    if a <= 0:
        raise ValueError(f"gamma_exact needs a positive argument, got {a}")
    if a.denominator == 1:
        return FactoredScalar.from_rat(math.factorial(int(a) - 1))
    if a.denominator == 2:
        n = int(a - Fraction(1, 2))
        v = Fraction(math.factorial(2 * n), 4**n * math.factorial(n))
        return FactoredScalar.from_rat(v) * FactoredScalar.sqrt_pi(1)
    raise ValueError(f"gamma_exact only handles integers and half-integers, got {a}")


def gamma_ratio(a, b):
    """``Gamma(b) / Gamma(a)`` for ``b - a`` integral, as an exact rational."""
    a = Fraction(a)
    b = Fraction(b)
    d = b - a
    if d.denominator != 1:
        raise ValueError(f"gamma_ratio needs an integer difference, got {a} and {b}")
    d = int(d)
    if d >= 0:
        v = pochhammer(a, d)
        if v == 0:
            raise GammaPoleError(f"Gamma({a}) is a pole")
        return norm(Fraction(v))
    v = pochhammer(b, -d)
    if v == 0:
        raise GammaPoleError(f"Gamma({b}) is a pole")
    return qdiv(1, v)
