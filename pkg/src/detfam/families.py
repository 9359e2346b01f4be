"""Matrix families built from sums of two binomial coefficients.

Every family is an instance of one entry formula::

    base**(i + beta) * C(X + i + m*j + gamma, m*j + alpha)
        + sign * C(X + eps2*i + m*j + delta, m*j + alpha)

with rows and columns indexed from 0 and ``X`` either absent, a symbolic
``x`` or a rational value substituted for it.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass, replace
from fractions import Fraction

from .exact import binomial, binomial_reflective, is_rational, norm, qpochhammer, rat
from .poly import MPoly, Poly

LETTER_SHAPE = {"D": (2, 2), "E": (3, 3), "F": (4, 2), "G": (2, 4)}
SHAPE_LETTER = {v: k for k, v in LETTER_SHAPE.items()}


class SpecParseError(ValueError):
    def __init__(self, text: str, pos: int, msg: str):
        super().__init__(f"{msg} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


@dataclass(frozen=True)
class FamilySpec:
    """Parameters of one determinant family.

    ``x_mode`` is ``"none"``, ``"symbolic"`` or ``"numeric"``; in the last
    case ``x_value`` holds the rational substituted for ``x``. ``base`` is an
    integer or the string ``"a"`` for a symbolic base.
    """

    base: int | str
    step: int
    alpha: int
    beta: int
    gamma: int
    delta: int
    sign: int = 1
    eps2: int = -1
    x_mode: str = "none"
    x_value: Fraction | int | None = None
    name: str | None = None
    convention: str = "reflective"

    def __post_init__(self):
        if self.sign not in (1, -1) or self.eps2 not in (1, -1):
            raise ValueError("sign and eps2 must be +1 or -1")
        if self.step < 1:
            raise ValueError("step must be positive")
        if self.x_mode not in ("none", "symbolic", "numeric"):
            raise ValueError(f"unknown x mode {self.x_mode!r}")
        if self.convention not in ("reflective", "strict"):
            raise ValueError(f"unknown binomial convention {self.convention!r}")
        if (self.x_mode == "numeric") != (self.x_value is not None):
            raise ValueError("x_value is required exactly when x_mode is numeric")

    @property
    def letter(self) -> str | None:
        if self.sign == 1 and self.eps2 == -1 and isinstance(self.base, int):
            return SHAPE_LETTER.get((self.base, self.step))
        return None

    @property
    def params(self) -> tuple[int, int, int, int]:
        return (self.alpha, self.beta, self.gamma, self.delta)

    @property
    def symbolic(self) -> bool:
        return self.x_mode == "symbolic" or isinstance(self.base, str)

    def with_x(self, value) -> "FamilySpec":
        """Substitute a rational for ``x`` (no-op on x-free specs)."""
        if self.x_mode == "none":
            return self
        return replace(self, x_mode="numeric", x_value=rat(value))

    def shifted(self, d_alpha=0, d_beta=0, d_gamma=0, d_delta=0) -> "FamilySpec":
        return replace(self, alpha=self.alpha + d_alpha, beta=self.beta + d_beta,
                       gamma=self.gamma + d_gamma, delta=self.delta + d_delta, name=None)

    def to_text(self) -> str:
        if self.name:
            return self.name
        letter = self.letter
        if letter is None:
            body = (f"base={self.base},step={self.step},{self.alpha},{self.beta},"
                    f"{self.gamma},{self.delta},sign={self.sign},eps2={self.eps2}")
            text = f"Family[{body}]"
        else:
            g = _xterm(self.gamma, self.x_mode != "none")
            d = _xterm(self.delta, self.x_mode != "none")
            text = f"{letter}[{self.alpha},{self.beta},{g},{d}]"
        if self.x_mode == "numeric":
            text += f"@x={self.x_value}"
        if self.convention == "strict":
            text += "!strict"
        return text

    __str__ = to_text

    def entry(self, i: int, j: int):
        m = self.step
        low = m * j + self.alpha
        X = self._x()
        e1 = i + m * j + self.gamma
        e2 = self.eps2 * i + m * j + self.delta
        binom = binomial_reflective if self.convention == "reflective" else binomial
        b1 = binom(e1 + X if X is not None else e1, low)
        b2 = binom(e2 + X if X is not None else e2, low)
        first = self._base_power(i + self.beta) * b1
        out = first + b2 if self.sign == 1 else first - b2
        return norm(out) if is_rational(out) else out

    def _x(self):
        if self.x_mode == "none":
            return None
        if self.x_mode == "numeric":
            return self.x_value
        if isinstance(self.base, str):
            return MPoly.gens("x")[0]
        return Poly.gen("x")

    def _base_power(self, e: int):
        if isinstance(self.base, str):
            (b,) = MPoly.gens(self.base)
            return b ** e
        if e >= 0:
            return self.base ** e
        return Fraction(1, self.base ** (-e))

    def matrix(self, n: int) -> "Matrix":
        return build_family(self, n)


def _xterm(c: int, has_x: bool) -> str:
    if not has_x:
        return str(c)
    if c == 0:
        return "x"
    return f"x+{c}" if c > 0 else f"x{c}"


def family(letter: str, alpha: int, beta: int, gamma: int, delta: int, *,
           x: bool = False) -> FamilySpec:
    """``family("D", 1, 1, 1, -1)`` is the D-family spec with those parameters."""
    base, step = LETTER_SHAPE[letter]
    return FamilySpec(base, step, alpha, beta, gamma, delta,
                      x_mode="symbolic" if x else "none")


def D(a, b, c, d, x=False):
    return family("D", a, b, c, d, x=x)


def E(a, b, c, d, x=False):
    return family("E", a, b, c, d, x=x)


def F(a, b, c, d, x=False):
    return family("F", a, b, c, d, x=x)


def G(a, b, c, d, x=False):
    return family("G", a, b, c, d, x=x)


# The first-row convention makes the Di Francesco matrix's second term
# binom(i-1, 2j+1) negated, which by upper negation is binom(-i+2j+1, 2j+1).
DI_FRANCESCO = FamilySpec(2, 2, 1, 0, 1, 1, name="DiFrancesco")
WARMUP = FamilySpec("a", 1, 0, 0, -1, -1, x_mode="symbolic", name="Warmup(a,x)")
D2 = FamilySpec(2, 2, 1, 0, 1, 1, x_mode="symbolic", name="D2(x)")
D3 = FamilySpec(2, 2, 0, 0, 0, 0, x_mode="symbolic", name="D3(x)")
MS1 = FamilySpec(4, 2, 3, 0, 3, 3, x_mode="symbolic", name="MS1")
DETX41 = FamilySpec(4, 2, 1, 0, 1, 1, x_mode="symbolic", name="detx41")

PRESETS = {s.name: s for s in (DI_FRANCESCO, WARMUP, D2, D3, MS1, DETX41)}


@dataclass(frozen=True)
class QSpec:
    """The q-analogue matrix; carried as a spec so the CLI can name it."""

    name: str = "Q"

    def to_text(self) -> str:
        return self.name


_INT = r"\s*(-?\d+)\s*"
_XARG = r"\s*(x\s*(?:[+-]\s*\d+)?|-?\d+)\s*"
_FAMILY_RE = re.compile(rf"([DEFG])\[{_INT},{_INT},{_XARG},{_XARG}\]$")


def _parse_xarg(tok: str) -> tuple[bool, int]:
    tok = tok.replace(" ", "")
    if tok.startswith("x"):
        rest = tok[1:]
        return True, int(rest) if rest else 0
    return False, int(tok)


def parse_spec(text: str):
    """Parse the canonical text form, e.g. ``D[1,1,1,-1]`` or ``F[3,0,x+3,x+3]``.

    Also accepts ``DiFrancesco``, ``Warmup(a,x)``, ``D2(x)``, ``D3(x)``, ``MS1``,
    ``detx41`` and ``Q``. A trailing ``!strict`` selects the strict binomial
    convention.
    """
    t = text.strip()
    if t.endswith("!strict"):
        return replace(parse_spec(t[: -len("!strict")]), convention="strict")
    if t in PRESETS:
        return PRESETS[t]
    if t in ("Warmup", "warmup"):
        return WARMUP
    if t == "Q":
        return QSpec()
    m = _FAMILY_RE.match(t)
    if not m:
        pos = 0
        if t[:1] in LETTER_SHAPE:
            pos = 1 if not t[1:2] == "[" else len(t)
        raise SpecParseError(text, pos, "unrecognised family spec")
    letter = m.group(1)
    a, b = int(m.group(2)), int(m.group(3))
    gx, g = _parse_xarg(m.group(4))
    dx, d = _parse_xarg(m.group(5))
    if gx != dx:
        raise SpecParseError(text, m.start(5), "x must appear in both gamma and delta or neither")
    return family(letter, a, b, g, d, x=gx)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Matrix:
    """Square matrix with an explicit ring tag (``int``, ``rat``, ``poly``, ``mpoly``)."""

    rows: tuple
    ring: str

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]

    @classmethod
    def from_rows(cls, rows) -> "Matrix":
        rows = tuple(tuple(r) for r in rows)
        for r in rows:
            if len(r) != len(rows):
                raise ValueError("matrix is not square")
        return cls(rows, _ring_of(rows))


def _ring_of(rows) -> str:
    ring = "int"
    for r in rows:
        for e in r:
            if isinstance(e, MPoly):
                return "mpoly"
            if isinstance(e, Poly):
                ring = "poly"
            elif type(e) is Fraction and ring == "int":
                ring = "rat"
    return ring


def build_family(spec: FamilySpec, n: int) -> Matrix:
    """The ``n x n`` matrix of ``spec``; ``n = 0`` gives the empty matrix."""
    if n < 0:
        raise ValueError("dimension must be nonnegative")
    rows = [[spec.entry(i, j) for j in range(n)] for i in range(n)]
    if isinstance(spec.base, str):
        rows = [[e if isinstance(e, MPoly) else MPoly.from_poly(e) if isinstance(e, Poly)
                 else MPoly.const(e) for e in r] for r in rows]
    elif spec.x_mode == "symbolic":
        rows = [[e if isinstance(e, Poly) else Poly.const(e) for e in r] for r in rows]
    return Matrix.from_rows(rows)


# ---------------------------------------------------------------------------
# Delannoy numbers


_DELANNOY: list[list[int]] = [[1]]
_DELANNOY_LOCK = threading.Lock()


def delannoy(i: int, j: int) -> int:
    """Paths (0,0)->(i,j) with unit right, up and diagonal steps; 0 off the quadrant."""
    if i < 0 or j < 0:
        return 0
    size = max(i, j) + 1
    if len(_DELANNOY) < size:
        with _DELANNOY_LOCK:
            _grow_delannoy(size)
    return _DELANNOY[i][j]


def _grow_delannoy(size: int) -> None:
    old = len(_DELANNOY)
    if old >= size:
        return
    table = [row + [0] * (size - len(row)) for row in _DELANNOY]
    table += [[0] * size for _ in range(size - old)]
    for a in range(size):
        for b in range(size):
            if a < old and b < old:
                continue
            if a == 0 or b == 0:
                table[a][b] = 1
            else:
                table[a][b] = table[a - 1][b] + table[a][b - 1] + table[a - 1][b - 1]
    _DELANNOY[:] = table


def build_delannoy_matrix(k: int, n: int) -> Matrix:
    """``k x k`` matrix with entry ``D(2j-i, i+n-k-1)`` for ``1 <= i, j <= k``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return Matrix.from_rows(
        [[delannoy(2 * j - i, i + n - k - 1) for j in range(1, k + 1)] for i in range(1, k + 1)]
    )


# ---------------------------------------------------------------------------
# q-analogue


def build_q_matrix(n: int) -> tuple[Matrix, MPoly]:
    """Symbolic q-matrix with column ``j`` multiplied by ``(q;q)_j``.

    Returns the cleared matrix over MPoly in (a, q, x) and the extracted
    factor ``prod_j (q;q)_j``, so ``det(original) = det(cleared) / factor``.
    """
    a, q, x = MPoly.gens("a", "q", "x")
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            e = a ** i * qpochhammer(x * q ** (1 + i), q, j) + qpochhammer(x * q ** (1 - i), q, j)
            row.append(e if isinstance(e, MPoly) else MPoly.const(e))
        rows.append(row)
    factor = MPoly.const(1)
    for j in range(n):
        factor = factor * qpochhammer(q, q, j)
    return Matrix(tuple(tuple(r) for r in rows), "mpoly"), factor


def build_q_matrix_at(n: int, q, a, x) -> Matrix:
    """The q-matrix evaluated at rational ``(q, a, x)``."""
    q, a, x = rat(q), rat(a), rat(x)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            den = qpochhammer(q, q, j)
            if den == 0:
                raise ZeroDivisionError(f"(q;q)_{j} vanishes at q={q}")
            num = Fraction(a) ** i * qpochhammer(x * Fraction(q) ** (1 + i), q, j) \
                + qpochhammer(x * Fraction(q) ** (1 - i), q, j)
            row.append(norm(Fraction(num) / den))
        rows.append(row)
    return Matrix.from_rows(rows)
