"""Exact polynomial arithmetic over the rationals.

* :class:`Poly` -- dense univariate polynomial (default variable ``x``).
* :class:`MPoly` -- sparse multivariate polynomial in named variables.
  Exponents may be negative (Laurent monomials), which is what the
  q-analogue needs for powers like ``q^(1-i)``.
* :class:`LaurentPoly` -- univariate Laurent polynomial whose coefficients are
  rationals or :class:`MPoly`; used for ``w = sqrt(v)`` expansions.
* :class:`RatFunc` -- quotient of two MPolys, content-reduced only; equality
  is decided by cross-multiplication.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce

from .exact import is_rational, norm, qdiv


class NotDivisible(ArithmeticError):
    """Raised by ``exact_div`` when the divisor does not divide exactly."""


def _fmt_rat(c) -> str:
    if type(c) is Fraction:
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def _join_terms(parts: list[tuple]) -> str:
    """``parts`` is a list of (coefficient, monomial-text) in display order."""
    if not parts:
        return "0"
    out = []
    for k, (c, mono) in enumerate(parts):
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{_fmt_rat(a)}*{mono}"
        else:
            body = _fmt_rat(a)
        if k == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


# ---------------------------------------------------------------------------
# univariate


class Poly:
    """Dense univariate polynomial; ``coeffs[k]`` multiplies ``var**k``."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=(), var: str = "x"):
        cs = [norm(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def gen(cls, var: str = "x") -> "Poly":
        return cls((0, 1), var)

    @classmethod
    def const(cls, c, var: str = "x") -> "Poly":
        return cls((c,), var)

    def one(self) -> "Poly":
        return Poly((1,), self.var)

    def zero(self) -> "Poly":
        return Poly((), self.var)

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if is_rational(other):
            return Poly((other,), self.var)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return Poly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if is_rational(other):
            return self.scale(other)
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return Poly((), self.var)
        if len(a) > 8 and len(b) > 8 and all(type(c) is int for c in a) \
                and all(type(c) is int for c in b):
            return Poly(_kronecker_mul(a, b), self.var)
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return Poly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = self.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "Poly":
        if c == 0:
            return Poly((), self.var)
        return Poly([ca * c for ca in self.coeffs], self.var)

    def __truediv__(self, other):
        if is_rational(other):
            return self.scale(Fraction(1) / other)
        return self.exact_div(other)

    def __call__(self, value):
        return self.eval(value)

    def eval(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return norm(acc) if is_rational(acc) else acc

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lb = other.lc
        bc = other.coeffs
        if len(rem) - 1 < db:
            return Poly((), self.var), Poly(rem, self.var)
        quo = [0] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db]
            if c == 0:
                continue
            q = qdiv(c, lb)
            quo[k] = q
            for t in range(db + 1):
                rem[k + t] -= q * bc[t]
        return Poly(quo, self.var), Poly(rem[:db], self.var)

    def exact_div(self, other) -> "Poly":
        if is_rational(other):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self.scale(Fraction(1) / other)
        q, r = self.divmod(other)
        if not r.is_zero():
            raise NotDivisible(f"{other} does not divide {self}")
        return q

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs and (self.var == other.var or self.degree <= 0)
        if is_rational(other):
            return self.coeffs == ((norm(other),) if other != 0 else ())
        if isinstance(other, MPoly):
            return MPoly.from_poly(self) == other
        return NotImplemented

    def __hash__(self):
        return hash((self.coeffs, self.var if self.degree > 0 else None))

    def monic(self) -> "Poly":
        return self.scale(Fraction(1) / self.lc)

    def content_and_primitive(self) -> tuple:
        return content_and_primitive(self)

    def multiplicity(self, root) -> int:
        """Multiplicity of ``root`` as a zero, by repeated exact division."""
        if self.is_zero():
            raise ValueError("multiplicity at a root of the zero polynomial")
        lin = Poly((-root, 1), self.var)
        p, m = self, 0
        while p.eval(root) == 0:
            p = p.exact_div(lin)
            m += 1
        return m

    def to_text(self) -> str:
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            parts.append((c, mono))
        return _join_terms(parts)

    __str__ = to_text

    def __repr__(self):
        return f"Poly({self.to_text()!r})"


def _kronecker_mul(a, b) -> list[int]:
    """Integer polynomial product through one big-integer multiplication."""
    bound = max(abs(c) for c in a) * max(abs(c) for c in b) * min(len(a), len(b))
    bits = bound.bit_length() + 2
    ea = sum(c << (bits * k) for k, c in enumerate(a))
    eb = sum(c << (bits * k) for k, c in enumerate(b))
    prod = ea * eb
    out = []
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    for _ in range(len(a) + len(b) - 1):
        c = prod & mask
        prod >>= bits
        if c >= half:
            c -= 1 << bits
            prod += 1
        out.append(c)
    return out


def content_and_primitive(p):
    """Split ``p = c * q`` with ``q`` having coprime integer coefficients.

    The sign is put into the content so that the primitive part has a
    positive leading coefficient.
    """
    if p.is_zero():
        raise ValueError("content of the zero polynomial")
    cs = list(p.coeffs) if isinstance(p, Poly) else list(p.terms.values())
    den = reduce(_lcm, (Fraction(c).denominator for c in cs), 1)
    ints = [int(c * den) for c in cs]
    g = reduce(math.gcd, ints, 0)
    content = Fraction(g, den)
    if p.lc < 0:
        content = -content
    return norm(content), p.scale(Fraction(1) / content)


# ---------------------------------------------------------------------------
# multivariate


def _grlex_key(e: tuple) -> tuple:
    return (sum(e), e)


class MPoly:
    """Sparse polynomial in named variables with rational coefficients.

    Variables are kept in sorted order and unused variables are dropped, so
    two equal polynomials always compare equal structurally.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, terms=None, vars: tuple = ()):
        terms = {} if terms is None else terms
        vars = tuple(vars)
        clean = {}
        for e, c in terms.items():
            if c != 0:
                e = tuple(e)
                clean[e] = norm(c)
        if vars and list(vars) != sorted(vars):
            order = sorted(range(len(vars)), key=lambda k: vars[k])
            clean = {tuple(e[k] for k in order): c for e, c in clean.items()}
            vars = tuple(vars[k] for k in order)
        used = [k for k in range(len(vars)) if any(e[k] for e in clean)]
        if len(used) != len(vars):
            clean = {tuple(e[k] for k in used): c for e, c in clean.items()}
            vars = tuple(vars[k] for k in used)
        self.vars = vars
        self.terms = clean

    @classmethod
    def gens(cls, *names: str) -> tuple["MPoly", ...]:
        return tuple(cls({(1,): 1}, (name,)) for name in names)

    @classmethod
    def const(cls, c) -> "MPoly":
        return cls({(): c}, ())

    @classmethod
    def from_poly(cls, p: Poly) -> "MPoly":
        return cls({(k,): c for k, c in enumerate(p.coeffs)}, (p.var,))

    def one(self) -> "MPoly":
        return MPoly.const(1)

    def zero(self) -> "MPoly":
        return MPoly({}, ())

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.vars

    def constant_value(self):
        return self.terms.get((), 0)

    def _aligned(self, other: "MPoly"):
        """Re-index both operands over the union of their variables."""
        if self.vars == other.vars:
            return self.vars, self.terms, other.terms
        allv = tuple(sorted(set(self.vars) | set(other.vars)))
        return allv, self._reindex(allv), other._reindex(allv)

    def _reindex(self, allv: tuple) -> dict:
        pos = [allv.index(v) for v in self.vars]
        n = len(allv)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for k, p in enumerate(pos):
                ne[p] = e[k]
            out[tuple(ne)] = c
        return out

    def _coerce(self, other):
        if isinstance(other, MPoly):
            return other
        if is_rational(other):
            return MPoly.const(other)
        if isinstance(other, Poly):
            return MPoly.from_poly(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        vars, a, b = self._aligned(o)
        out = dict(a)
        for e, c in b.items():
            out[e] = out.get(e, 0) + c
        return MPoly(out, vars)

    __radd__ = __add__

    def __neg__(self):
        return MPoly({e: -c for e, c in self.terms.items()}, self.vars)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if is_rational(other):
            return self.scale(other)
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        vars, a, b = self._aligned(o)
        out: dict = {}
        get = out.get
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
        return MPoly(out, vars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) == 1:
                (e, c), = self.terms.items()
                return MPoly({tuple(-x * (-k) for x in e): Fraction(1) / c ** (-k)}, self.vars)
            raise ValueError("negative power of a non-monomial")
        out = self.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "MPoly":
        if c == 0:
            return MPoly({}, ())
        return MPoly({e: v * c for e, v in self.terms.items()}, self.vars)

    def __truediv__(self, other):
        if is_rational(other):
            return self.scale(Fraction(1) / other)
        return self.exact_div(other)

    def eval(self, **subs):
        """Substitute rationals (or polynomials) for any subset of the variables."""
        out = MPoly({}, ())
        keep = [k for k, v in enumerate(self.vars) if v not in subs]
        keep_vars = tuple(self.vars[k] for k in keep)
        for e, c in self.terms.items():
            term = c
            for k, v in enumerate(self.vars):
                if v in subs and e[k]:
                    val = subs[v]
                    term = term * (Fraction(val) ** e[k] if is_rational(val) else val ** e[k])
            mono = MPoly({tuple(e[k] for k in keep): 1}, keep_vars)
            out = out + mono * term
        if out.is_constant():
            return out.constant_value()
        return out

    def __call__(self, **subs):
        return self.eval(**subs)

    @property
    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, var: str) -> int:
        if var not in self.vars:
            return 0 if self.terms else -1
        k = self.vars.index(var)
        return max(e[k] for e in self.terms)

    def leading(self):
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    @property
    def lc(self):
        return self.leading()[1] if self.terms else 0

    @property
    def coeffs(self):
        return tuple(self.terms.values())

    def min_exponents(self) -> tuple:
        n = len(self.vars)
        return tuple(min(e[k] for e in self.terms) for k in range(n))

    def shift(self, d: tuple) -> "MPoly":
        """Multiply by the monomial with exponent vector ``d``."""
        return MPoly({tuple(x + y for x, y in zip(e, d)): c for e, c in self.terms.items()},
                     self.vars)

    def exact_div(self, other) -> "MPoly":
        """Exact quotient; raises :class:`NotDivisible` if there is a remainder.

        Works in the Laurent ring: monomial content is split off both operands
        first, then ordinary division by leading terms is run.
        """
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return MPoly({}, ())
        vars, a, b = self._aligned(o)
        n = len(vars)
        ma = tuple(min(e[k] for e in a) for k in range(n))
        mb = tuple(min(e[k] for e in b) for k in range(n))
        a = {tuple(x - y for x, y in zip(e, ma)): c for e, c in a.items()}
        b = {tuple(x - y for x, y in zip(e, mb)): c for e, c in b.items()}
        if len(b) == 1:
            (eb, cb), = b.items()
            quo = {e: qdiv(c, cb) for e, c in a.items()}
        else:
            quo = _mdiv(a, b)
        d = tuple(x - y for x, y in zip(ma, mb))
        return MPoly({tuple(x + y for x, y in zip(e, d)): c for e, c in quo.items()}, vars)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.vars == o.vars and self.terms == o.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def to_poly(self, var: str | None = None) -> Poly:
        if not self.vars:
            return Poly((self.constant_value(),), var or "x")
        if len(self.vars) != 1 or (var is not None and self.vars[0] != var):
            raise ValueError(f"not univariate in {var}: {self}")
        if any(e[0] < 0 for e in self.terms):
            raise ValueError("negative exponent")
        deg = max(e[0] for e in self.terms)
        cs = [0] * (deg + 1)
        for e, c in self.terms.items():
            cs[e[0]] = c
        return Poly(cs, self.vars[0])

    def content_and_primitive(self):
        return content_and_primitive(self)

    def to_text(self) -> str:
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            parts.append((self.terms[e], mono))
        return _join_terms(parts)

    __str__ = to_text

    def __repr__(self):
        return f"MPoly({self.to_text()!r})"


def _mdiv(a: dict, b: dict) -> dict:
    """Polynomial division of term dicts that must be exact."""
    eb, cb = max(b.items(), key=lambda t: _grlex_key(t[0]))
    rem = dict(a)
    quo = {}
    while rem:
        er = max(rem, key=_grlex_key)
        cr = rem[er]
        d = tuple(x - y for x, y in zip(er, eb))
        if any(x < 0 for x in d):
            raise NotDivisible("leading monomial not divisible")
        q = qdiv(cr, cb)
        quo[d] = q
        for e, c in b.items():
            t = tuple(x + y for x, y in zip(e, d))
            v = rem.get(t, 0) - q * c
            if v == 0:
                rem.pop(t, None)
            else:
                rem[t] = v
    return quo


def as_mpoly(v) -> MPoly:
    if isinstance(v, MPoly):
        return v
    if isinstance(v, Poly):
        return MPoly.from_poly(v)
    return MPoly.const(v)


# ---------------------------------------------------------------------------
# Laurent in one variable


class LaurentPoly:
    """Laurent polynomial in one variable, coefficients rational or MPoly."""

    __slots__ = ("terms", "var")

    def __init__(self, terms=None, var: str = "w"):
        terms = {} if terms is None else terms
        self.terms = {int(k): (norm(c) if is_rational(c) else c)
                      for k, c in terms.items() if not _is_zero(c)}
        self.var = var

    @classmethod
    def gen(cls, var: str = "w") -> "LaurentPoly":
        return cls({1: 1}, var)

    def one(self) -> "LaurentPoly":
        return LaurentPoly({0: 1}, self.var)

    def is_zero(self) -> bool:
        return not self.terms

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if is_rational(other) or isinstance(other, MPoly):
            return LaurentPoly({0: other}, self.var)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for k, c in o.terms.items():
            out[k] = out[k] + c if k in out else c
        return LaurentPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self.terms.items()}, self.var)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if is_rational(other):
            return self.scale(other)
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        out: dict = {}
        for ka, ca in self.terms.items():
            for kb, cb in o.terms.items():
                k = ka + kb
                out[k] = out[k] + ca * cb if k in out else ca * cb
        return LaurentPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) == 1:
                (e, c), = self.terms.items()
                return LaurentPoly({e * k: Fraction(1) / Fraction(c) ** (-k)}, self.var)
            raise ValueError("negative power of a non-monomial Laurent polynomial")
        out = self.one()
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c) -> "LaurentPoly":
        return LaurentPoly({k: v * c for k, v in self.terms.items()}, self.var)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coefficient_list(self) -> list:
        return [self.terms[k] for k in sorted(self.terms)]

    def to_text(self) -> str:
        parts = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            if is_rational(c):
                parts.append((c, mono))
            else:
                parts.append((1, f"({c})" + (f"*{mono}" if mono else "")))
        return _join_terms(parts)

    __str__ = to_text

    def __repr__(self):
        return f"LaurentPoly({self.to_text()!r})"


def _is_zero(c) -> bool:
    return c == 0 if is_rational(c) else c.is_zero()


def laurent_binomial_power(sign: int, exponent: int, var: str = "w") -> LaurentPoly:
    """Expand ``(1 + sign*w)**exponent`` for ``exponent >= 0``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if exponent < 0:
        raise ValueError("negative exponent")
    return LaurentPoly(
        {k: math.comb(exponent, k) * (sign**k) for k in range(exponent + 1)}, var
    )


# ---------------------------------------------------------------------------
# rational functions


class RatFunc:
    """Fraction of multivariate polynomials, reduced by content only."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = as_mpoly(num)
        den = as_mpoly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = num, MPoly.const(1)
            return
        cn, pn = content_and_primitive(num)
        cd, pd = content_and_primitive(den)
        c = Fraction(cn) / Fraction(cd)
        # cancel the denominator outright when it divides the numerator
        if not pd.is_constant():
            try:
                pn = pn.exact_div(pd)
                pd = MPoly.const(1)
            except NotDivisible:
                pass
        self.num = pn.scale(c)
        self.den = pd

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if is_rational(other) or isinstance(other, (MPoly, Poly)):
            return RatFunc(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self.num * o.den - o.num * self.den).is_zero()

    def __hash__(self):
        raise TypeError("RatFunc is unhashable (equality is by cross-multiplication)")

    def eval(self, **subs):
        d = self.den.eval(**subs)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at the sample point")
        n = self.num.eval(**subs)
        if is_rational(n) and is_rational(d):
            return qdiv(n, d)
        return RatFunc(n, d)

    def to_text(self) -> str:
        if self.den.is_constant() and self.den.constant_value() == 1:
            return self.num.to_text()
        return f"({self.num.to_text()})/({self.den.to_text()})"

    __str__ = to_text

    def __repr__(self):
        return f"RatFunc({self.to_text()!r})"


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


class PolyParseError(ValueError):
    def __init__(self, text: str, pos: int, msg: str):
        super().__init__(f"{msg} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        num, name, op = m.groups()
        start = m.start(1) if num else (m.start(2) if name else m.start(3))
        if num:
            out.append(("num", num, start))
        elif name:
            out.append(("name", name, start))
        else:
            if op not in "+-*/^()":
                raise PolyParseError(text, start, f"unexpected character {op!r}")
            out.append(("op", op, start))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.toks[self.k] if self.k < len(self.toks) else ("end", "", len(self.text))

    def take(self):
        t = self.peek()
        self.k += 1
        return t

    def expect(self, op):
        t = self.take()
        if t[1] != op:
            raise PolyParseError(self.text, t[2], f"expected {op!r}")

    def expr(self):
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term() * sign
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.power()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.power()
            elif kind == "op" and val == "/":
                self.take()
                d = self.power()
                if not (isinstance(d, MPoly) and d.is_constant()):
                    raise PolyParseError(self.text, pos, "division by a non-constant")
                acc = acc.scale(Fraction(1) / Fraction(d.constant_value()))
            elif kind in ("num", "name") or (kind == "op" and val == "("):
                acc = acc * self.power()
            else:
                return acc

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^", self.peek()[2]):
            self.take()
            sign = 1
            if self.peek()[1] == "-":
                self.take()
                sign = -1
            kind, val, pos = self.take()
            if kind == "num":
                e = int(val)
            elif kind == "op" and val == "(":
                inner = self.expr()
                self.expect(")")
                if not (inner.is_constant() and type(inner.constant_value()) is int):
                    raise PolyParseError(self.text, pos, "exponent must be an integer")
                e = inner.constant_value()
            else:
                raise PolyParseError(self.text, pos, "expected an exponent")
            return base ** (sign * e)
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            return MPoly.const(int(val))
        if kind == "name":
            return MPoly.gens(val)[0]
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "op" and val == "-":
            return -self.power()
        raise PolyParseError(self.text, pos, "unexpected token" if kind != "end" else "unexpected end")


def parse_mpoly(text: str) -> MPoly:
    """Parse polynomial text such as ``"a j^2 + 2*a*j*x - 3/2"``.

    Juxtaposition means multiplication, ``^`` takes an integer exponent
    (negative only on monomials) and ``/`` divides by a rational constant.
    The output of :meth:`MPoly.to_text` parses back to the same polynomial.
    """
    p = _Parser(text)
    if not p.toks:
        raise PolyParseError(text, 0, "empty polynomial")
    out = p.expr()
    kind, val, pos = p.peek()
    if kind != "end":
        raise PolyParseError(text, pos, f"unexpected {val!r}")
    return out
