"""Guessing and checking linear recurrences with polynomial coefficients.

A recurrence is a support (a list of shift vectors) together with one
polynomial coefficient per shift. Fitting sets up the linear system
``sum_s c_s(P) * data(P + s) = 0`` over every point ``P`` where all shifted
values are known and computes its exact nullspace over Q. Small systems are
eliminated fraction-free over Z; large ones are solved modulo word-size
primes, lifted by Chinese remaindering and rational reconstruction, and the
lifted basis is then checked exactly against every equation.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

import numpy as np
from sklearn.base import BaseEstimator

from .exact import is_prime, norm, rat
from .poly import MPoly, parse_mpoly
from .report import CheckItem, Report

VARS = ("n", "j")


class InsufficientData(ValueError):
    """Fewer instantiable points than unknowns plus the required slack."""


class InconsistentData(ValueError):
    """Initial values contradict the recurrence being unrolled."""


class NullspaceError(ArithmeticError):
    """The modular nullspace could not be lifted to Q."""


# ---------------------------------------------------------------------------
# supports

_SHIFT_TOKEN = re.compile(r"S([nj])(\^?(\d+))?")


@dataclass(frozen=True)
class ShiftSupport:
    """Shift vectors ``(p,)`` or ``(p, q)``: the term at ``(n+p, j+q)``."""

    shifts: tuple

    def __post_init__(self):
        if not self.shifts:
            raise ValueError("a support needs at least one shift")
        dims = {len(s) for s in self.shifts}
        if len(dims) != 1:
            raise ValueError("all shifts must have the same dimension")
        if len(set(self.shifts)) != len(self.shifts):
            raise ValueError("duplicate shift in support")
        if any(c < 0 for s in self.shifts for c in s):
            raise ValueError("shifts must be nonnegative")

    @property
    def dim(self) -> int:
        return len(self.shifts[0])

    def __len__(self):
        return len(self.shifts)

    def __iter__(self):
        return iter(self.shifts)

    @classmethod
    def parse(cls, text: str, dim: int | None = None) -> "ShiftSupport":
        """Parse ``"Sj2,SnSj,Sn,1"`` (operator form) or ``"(1,0),(0,0)"``."""
        text = text.strip()
        if text.startswith("("):
            shifts = tuple(tuple(int(v) for v in m.split(",")) for m in re.findall(r"\(([^)]*)\)", text))
            return cls(shifts)
        items = [t.strip() for t in text.split(",") if t.strip()]
        if dim is None:
            dim = 2 if "Sj" in text else 1
        shifts = []
        for item in items:
            vec = [0] * dim
            if item != "1":
                pos = 0
                for m in _SHIFT_TOKEN.finditer(item):
                    if m.start() != pos:
                        raise ValueError(f"cannot parse shift {item!r}")
                    k = VARS.index(m.group(1))
                    if k >= dim:
                        raise ValueError(f"shift {item!r} needs a bivariate support")
                    vec[k] += int(m.group(3) or 1)
                    pos = m.end()
                if pos != len(item):
                    raise ValueError(f"cannot parse shift {item!r}")
            shifts.append(tuple(vec))
        return cls(tuple(shifts))

    @staticmethod
    def shift_text(s: tuple) -> str:
        out = ""
        for v, e in zip(VARS, s):
            if e:
                out += f"S{v}" + (str(e) if e > 1 else "")
        return out or "1"

    def to_text(self) -> str:
        return ",".join(self.shift_text(s) for s in self.shifts)

    def normalized(self) -> frozenset:
        return frozenset(self.shifts)

    def leading(self) -> tuple:
        """The largest shift in lexicographic order (a term order on shifts)."""
        return max(self.shifts)

    def maximal(self) -> list[tuple]:
        """Maximal elements under the componentwise order."""
        return [s for s in self.shifts
                if not any(t != s and all(a >= b for a, b in zip(t, s)) for t in self.shifts)]


# ---------------------------------------------------------------------------
# data tables


@dataclass
class DataTable:
    """Exact values at integer points ``(n,)`` or ``(n, j)``.

    A point that is absent is unknown; a stored ``0`` is a known zero.
    """

    values: dict = field(default_factory=dict)
    dim: int = 1
    domain: str = ""

    def __post_init__(self):
        vals = {}
        for k, v in self.values.items():
            k = (k,) if isinstance(k, int) else tuple(k)
            if len(k) != self.dim:
                raise ValueError(f"point {k} does not have dimension {self.dim}")
            vals[k] = rat(v)
        self.values = vals

    def __contains__(self, point) -> bool:
        return tuple(point) in self.values

    def __getitem__(self, point):
        return self.values[tuple(point)]

    def __len__(self):
        return len(self.values)

    def get(self, point, default=None):
        return self.values.get(tuple(point), default)

    def points(self) -> list[tuple]:
        return sorted(self.values)

    @classmethod
    def from_function(cls, f, points, dim: int | None = None, domain: str = "") -> "DataTable":
        pts = [(p,) if isinstance(p, int) else tuple(p) for p in points]
        d = dim if dim is not None else (len(pts[0]) if pts else 1)
        return cls({p: f(*p) for p in pts}, d, domain)

    def restrict(self, points) -> "DataTable":
        keep = {tuple(p) for p in points}
        return DataTable({k: v for k, v in self.values.items() if k in keep}, self.dim, self.domain)

    def split(self, fraction: float = 0.7) -> tuple["DataTable", "DataTable"]:
        """First ``fraction`` of the points in lexicographic order, and the rest."""
        pts = self.points()
        cut = int(round(len(pts) * fraction))
        return self.restrict(pts[:cut]), self.restrict(pts[cut:])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(list(VARS[: self.dim]) + ["value"])
        for p in self.points():
            v = self.values[p]
            w.writerow(list(p) + [str(v)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, domain: str = "") -> "DataTable":
        rows = list(csv.reader(io.StringIO(text)))
        if not rows:
            raise ValueError("empty CSV")
        header = [h.strip() for h in rows[0]]
        if header[-1] != "value" or len(header) not in (2, 3):
            raise ValueError("CSV header must be 'n,value' or 'n,j,value'")
        dim = len(header) - 1
        vals = {}
        for r in rows[1:]:
            if not r:
                continue
            vals[tuple(int(c) for c in r[:dim])] = rat(r[dim])
        return cls(vals, dim, domain)


# ---------------------------------------------------------------------------
# recurrences


def _compile(p: MPoly, names: tuple) -> list:
    """Terms of ``p`` as ``(coef, exponents in names order)`` for fast evaluation."""
    idx = [names.index(v) if v in names else None for v in p.vars]
    if any(i is None for i in idx):
        missing = [v for v, i in zip(p.vars, idx) if i is None]
        raise ValueError(f"no value for variable(s) {missing}")
    out = []
    for e, c in p.terms.items():
        exps = [0] * len(names)
        for k, i in enumerate(idx):
            exps[i] = e[k]
        out.append((c, tuple(exps)))
    return out


def _eval_compiled(terms, point) -> Fraction | int:
    acc = 0
    for c, exps in terms:
        t = c
        for v, e in zip(point, exps):
            if e:
                t = t * v ** e
        acc += t
    return acc


@dataclass
class Recurrence:
    """``sum_s coeffs[s](n, j, params) * f(point + s) = 0``."""

    support: ShiftSupport
    coeffs: tuple
    tag: str = ""
    verified_on: int = 0

    def __post_init__(self):
        self.coeffs = tuple(c if isinstance(c, MPoly) else MPoly.const(c) for c in self.coeffs)
        if len(self.coeffs) != len(self.support):
            raise ValueError("one coefficient per support element is required")
        if all(c.is_zero() for c in self.coeffs):
            raise ValueError("all coefficients vanish")

    @property
    def dim(self) -> int:
        return self.support.dim

    @property
    def index_vars(self) -> tuple:
        return VARS[: self.dim]

    @property
    def parameters(self) -> tuple:
        vs = {v for c in self.coeffs for v in c.vars}
        return tuple(sorted(vs - set(self.index_vars)))

    def effective_support(self) -> ShiftSupport:
        return ShiftSupport(tuple(s for s, c in zip(self.support, self.coeffs) if not c.is_zero()))

    def degree(self) -> int:
        return max(c.total_degree for c in self.coeffs)

    def degrees(self) -> dict:
        return {v: max(c.degree_in(v) for c in self.coeffs if not c.is_zero()) for v in self.index_vars}

    def normalized(self) -> "Recurrence":
        """Coprime integer coefficients, first nonzero coefficient with positive leading term."""
        cs = [c for co in self.coeffs for c in co.coeffs]
        den = reduce(lambda a, b: a * b // math.gcd(a, b), (Fraction(c).denominator for c in cs), 1)
        g = reduce(math.gcd, (int(Fraction(c) * den) for c in cs), 0)
        first = next(c for c in self.coeffs if not c.is_zero())
        k = Fraction(den, g) * (1 if first.lc > 0 else -1)
        return Recurrence(self.support, tuple(c.scale(k) for c in self.coeffs), self.tag, self.verified_on)

    def specialize(self, **params) -> "Recurrence":
        cs = []
        for c in self.coeffs:
            v = c.eval(**params) if params else c
            cs.append(v if isinstance(v, MPoly) else MPoly.const(v))
        return Recurrence(self.support, tuple(cs), self.tag, self.verified_on)

    def compiled(self, params: dict | None = None):
        rec = self.specialize(**params) if params else self
        names = rec.index_vars
        return [_compile(c, names) for c in rec.coeffs]

    def residual(self, data: DataTable, point, params: dict | None = None, _compiled=None):
        comp = self.compiled(params) if _compiled is None else _compiled
        point = tuple(point)
        acc = 0
        for s, terms in zip(self.support, comp):
            if not terms:
                continue
            v = data[tuple(a + b for a, b in zip(point, s))]
            if v:
                acc += _eval_compiled(terms, point) * v
        return norm(acc) if isinstance(acc, Fraction) else acc

    def to_json(self) -> dict:
        return {
            "support": [list(s) for s in self.support],
            "support_text": self.support.to_text(),
            "coefficients": [c.to_text() for c in self.coeffs],
            "tag": self.tag,
            "verified_on": self.verified_on,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, doc) -> "Recurrence":
        if isinstance(doc, str):
            doc = json.loads(doc)
        support = ShiftSupport(tuple(tuple(s) for s in doc["support"]))
        coeffs = tuple(parse_mpoly(t) for t in doc["coefficients"])
        return cls(support, coeffs, doc.get("tag", ""), doc.get("verified_on", 0))

    def __eq__(self, other):
        if not isinstance(other, Recurrence):
            return NotImplemented
        return self.support == other.support and self.coeffs == other.coeffs

    def same_up_to_scaling(self, other: "Recurrence") -> bool:
        """Equal after normalization, comparing supports as sets."""
        a, b = self.normalized(), other.normalized()
        da = dict(zip(a.support, a.coeffs))
        db = dict(zip(b.support, b.coeffs))
        keys = set(da) | set(db)
        zero = MPoly.const(0)
        return all(da.get(k, zero) == db.get(k, zero) for k in keys)


# ---------------------------------------------------------------------------
# exact nullspace


def _clear_row(row) -> list[int]:
    den = 1
    for c in row:
        if type(c) is Fraction:
            den = den * c.denominator // math.gcd(den, c.denominator)
    out = [int(c * den) for c in row]
    g = reduce(math.gcd, out, 0)
    return [c // g for c in out] if g > 1 else out


def nullspace_fraction_free(rows: list[list], ncols: int) -> list[list]:
    """Nullspace basis over Q by fraction-free Gauss-Jordan elimination over Z.

    Rows are cleared to integers, and after each elimination step every row is
    divided by its content. The basis vector of a free column ``f`` has a 1 at
    ``f`` and is supported on pivot columns left of ``f``.
    """
    mat = [_clear_row(r) for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        pr = mat[r]
        pc = pr[c]
        for i in range(len(mat)):
            if i == r or not mat[i][c]:
                continue
            a = mat[i][c]
            new = [pc * x - a * y for x, y in zip(mat[i], pr)]
            g = reduce(math.gcd, new, 0)
            mat[i] = [x // g for x in new] if g > 1 else new
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return _basis_from_rref(mat[:r], pivots, ncols, lambda i, c: Fraction(mat[i][c], mat[i][pivots[i]]))


def _basis_from_rref(rows, pivots, ncols, entry) -> list[list]:
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [0] * ncols
        v[f] = 1
        for i, pc in enumerate(pivots):
            if pc < f:
                e = entry(i, f)
                if e:
                    v[pc] = norm(-e)
        basis.append(v)
    return basis


def _rref_mod(A: np.ndarray, p: int):
    """Reduced row echelon form mod ``p``; returns (rows, pivot columns, source rows)."""
    A = A.copy()
    m, ncols = A.shape
    perm = np.arange(m)
    r = 0
    pivots = []
    for c in range(ncols):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
            perm[[r, k]] = perm[[k, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r, c:] = A[r, c:] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        idx = np.flatnonzero(col)
        if idx.size:
            A[idx, c:] = (A[idx, c:] - col[idx, None] * A[r, c:] % p) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots, perm[:r]


def _primes(start: int = 2 ** 31 - 1):
    p = start
    while True:
        if is_prime(p):
            yield p
        p -= 2 if p % 2 else 1


def _ratrec(a: int, m: int):
    """Rational reconstruction of ``a mod m`` with numerator and denominator below ``sqrt(m/2)``."""
    a %= m
    bound = math.isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or math.gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def nullspace_modular(rows: list[list], ncols: int, max_primes: int = 200) -> list[list]:
    """Nullspace over Q via modular RREF, CRT lifting and exact verification.

    The rank modulo a prime never exceeds the rank over Q, so a basis with as
    many vectors as the modular nullity that satisfies every equation exactly
    spans the rational nullspace.
    """
    ints = [_clear_row(r) for r in rows if any(r)]
    if not ints:
        return [[1 if k == f else 0 for k in range(ncols)] for f in range(ncols)]
    primes = _primes()
    p0 = next(primes)
    R, pivots, src = _rref_mod(np.array([[x % p0 for x in r] for r in ints], dtype=np.int64), p0)
    if len(pivots) == ncols:
        return []
    sub = [ints[i] for i in src]
    free = [c for c in range(ncols) if c not in set(pivots)]

    def residues(Rm):
        return [[int(Rm[i, f]) for f in free] for i in range(len(pivots))]

    acc = residues(R)
    modulus = p0
    previous = None
    for _ in range(max_primes):
        lifted = _lift(acc, modulus)
        if lifted is not None and lifted == previous:
            basis = _assemble(lifted, pivots, free, ncols)
            if _verify_exact(ints, basis):
                return basis
        previous = lifted
        p = next(primes)
        Rp, piv_p, _ = _rref_mod(np.array([[x % p for x in r] for r in sub], dtype=np.int64), p)
        if piv_p != pivots:
            continue
        res = residues(Rp)
        new_mod = modulus * p
        inv = pow(modulus, -1, p)
        acc = [[(a + modulus * ((b - a) * inv % p)) % new_mod for a, b in zip(ra, rb)]
               for ra, rb in zip(acc, res)]
        modulus = new_mod
    raise NullspaceError("modular nullspace did not stabilise")


def _lift(acc, modulus):
    out = []
    for row in acc:
        lr = []
        for a in row:
            q = _ratrec(a, modulus)
            if q is None:
                return None
            lr.append(q)
        out.append(lr)
    return out


def _assemble(lifted, pivots, free, ncols):
    basis = []
    for k, f in enumerate(free):
        v = [0] * ncols
        v[f] = 1
        for i, pc in enumerate(pivots):
            e = lifted[i][k]
            if e:
                v[pc] = norm(-e)
        basis.append(v)
    return basis


def _verify_exact(ints, basis) -> bool:
    for v in basis:
        w = _clear_row(v)
        nzk = [(k, x) for k, x in enumerate(w) if x]
        for r in ints:
            if sum(r[k] * x for k, x in nzk):
                return False
    return True


def nullspace(rows: list[list], ncols: int, method: str = "auto") -> list[list]:
    if method == "auto":
        method = "fraction-free" if ncols <= 60 else "modular"
    if method == "fraction-free":
        return nullspace_fraction_free(rows, ncols)
    if method == "modular":
        return nullspace_modular(rows, ncols)
    raise ValueError(f"unknown nullspace method {method!r}")


def nullity_mod_p(rows: list[list], ncols: int, p: int = 2 ** 31 - 1) -> int:
    """Dimension of the nullspace modulo ``p``, an upper bound for the rational one."""
    ints = [_clear_row(r) for r in rows if any(r)]
    if not ints:
        return ncols
    _, pivots, _ = _rref_mod(np.array([[x % p for x in r] for r in ints], dtype=np.int64), p)
    return ncols - len(pivots)


# ---------------------------------------------------------------------------
# fitting


def monomials(dim: int, degree, total_degree: int | None = None) -> list[tuple]:
    """Exponent vectors bounded by ``degree`` entrywise (and by ``total_degree`` in sum).

    ``degree`` is one bound for every index variable or a tuple of bounds.
    """
    bounds = (degree,) * dim if isinstance(degree, int) else tuple(degree)
    if len(bounds) != dim:
        raise ValueError(f"need {dim} degree bounds")
    out = [e for e in itertools.product(*(range(b + 1) for b in bounds))
           if total_degree is None or sum(e) <= total_degree]
    return sorted(out, key=lambda e: (sum(e), e))


def instantiable_points(data: DataTable, support: ShiftSupport) -> list[tuple]:
    return [p for p in data.points()
            if all(tuple(a + b for a, b in zip(p, s)) in data.values for s in support)]


def _lift_support(support: ShiftSupport, dim: int) -> ShiftSupport:
    if support.dim == dim:
        return support
    if support.dim == 1 and dim == 2:
        return ShiftSupport(tuple((s[0], 0) for s in support))
    raise ValueError("support dimension does not match the data")


def build_system(data: DataTable, support: ShiftSupport, degree, total_degree: int | None = None):
    """Rows of the fitting system and the column layout ``[(support index, exponents)]``."""
    support = _lift_support(support, data.dim)
    mons = monomials(data.dim, degree, total_degree)
    cols = [(k, e) for e in mons for k in range(len(support))]
    pts = instantiable_points(data, support)
    rows = []
    for p in pts:
        vals = [data[tuple(a + b for a, b in zip(p, s))] for s in support]
        powers = {e: math.prod(v ** x for v, x in zip(p, e)) for e in mons}
        rows.append([vals[k] * powers[e] for k, e in cols])
    return rows, cols, pts


def _vector_to_recurrence(v, cols, support: ShiftSupport) -> Recurrence:
    names = VARS[: support.dim]
    terms = [dict() for _ in support]
    for (k, e), c in zip(cols, v):
        if c:
            terms[k][e] = c
    coeffs = tuple(MPoly(t, names) for t in terms)
    return Recurrence(support, coeffs).normalized()


def fit_recurrence(data: DataTable, support: ShiftSupport | str, degree,
                   total_degree: int | None = None, slack: int = 10, method: str = "auto") -> list[Recurrence]:
    """Basis of all recurrences with the given support and coefficient degree bound.

    ``degree`` bounds the degree of every coefficient in each index variable
    separately (an int, or one bound per variable); ``total_degree`` optionally caps the total degree. Raises
    :class:`InsufficientData` unless there are at least ``unknowns + slack``
    instantiable points. The basis is ordered by total coefficient degree, then
    by support size.
    """
    if isinstance(support, str):
        support = ShiftSupport.parse(support, data.dim)
    support = _lift_support(support, data.dim)
    rows, cols, pts = build_system(data, support, degree, total_degree)
    if len(pts) < len(cols) + slack:
        raise InsufficientData(
            f"{len(pts)} instantiable points for {len(cols)} unknowns; need at least {len(cols) + slack}")
    basis = nullspace(rows, len(cols), method)
    recs = [_vector_to_recurrence(v, cols, support) for v in basis]
    for r in recs:
        r.tag = f"conjectural, fitted on {len(pts)} points"
    recs.sort(key=lambda r: (r.degree(), len(r.effective_support()), [c.to_text() for c in r.coeffs]))
    return recs


def support_nullity_mod_p(data: DataTable, support: ShiftSupport | str, degree,
                          total_degree: int | None = None) -> int:
    if isinstance(support, str):
        support = ShiftSupport.parse(support, data.dim)
    rows, cols, _ = build_system(data, support, degree, total_degree)
    return nullity_mod_p(rows, len(cols))


def is_minimal_support(data: DataTable, support: ShiftSupport | str, degree,
                       total_degree: int | None = None) -> bool:
    """No recurrence within the degree bound lives on a proper subset of ``support``.

    A zero nullity modulo a prime certifies an empty rational nullspace.
    """
    if isinstance(support, str):
        support = ShiftSupport.parse(support, data.dim)
    for k in range(len(support)):
        sub = ShiftSupport(support.shifts[:k] + support.shifts[k + 1:])
        if support_nullity_mod_p(data, sub, degree, total_degree) > 0:
            return False
    return True


def check_recurrence(rec: Recurrence, data: DataTable, params: dict | None = None, name: str = "recurrence",
                     record_all: bool = False) -> Report:
    """Residual of ``rec`` at every instantiable point of ``data``.

    With ``record_all`` every point becomes an item; otherwise only failures
    and one summary item are recorded.
    """
    rep = Report(name, "conjecture")
    support = _lift_support(rec.support, data.dim)
    rec = Recurrence(support, rec.coeffs, rec.tag, rec.verified_on)
    comp = rec.compiled(params)
    pts = instantiable_points(data, support)
    failures = 0
    for p in pts:
        r = rec.residual(data, p, _compiled=comp)
        if r != 0 or record_all:
            rep.add(CheckItem(f"residual{p}", r == 0, n=p[0], x=p[1] if len(p) > 1 else None, lhs=r, rhs=0))
            failures += r != 0
    note = "vacuous: no instantiable points" if not pts else ""
    rep.add(CheckItem("points_checked", failures == 0, lhs=len(pts), rhs=failures, note=note))
    return rep


def fit_with_holdout(data: DataTable, support, degree, total_degree: int | None = None,
                     train_fraction: float = 0.7, slack: int = 10, method: str = "auto"):
    """Fit on the first ``train_fraction`` of the points and check the rest."""
    train, held = data.split(train_fraction)
    recs = fit_recurrence(train, support, degree, total_degree, slack, method)
    reports = []
    for rec in recs:
        rep = check_recurrence(rec, data, name="holdout")
        held_pts = set(held.points())
        n_held = sum(1 for p in instantiable_points(data, _lift_support(rec.support, data.dim))
                     if any(tuple(a + b for a, b in zip(p, s)) in held_pts for s in rec.support))
        rec.verified_on = n_held
        rec.tag = f"conjectural, verified on {n_held} held-out points"
        reports.append(rep)
    return recs, reports


def _coordinates(rec: Recurrence) -> dict:
    out = {}
    for shift, c in zip(rec.support, rec.coeffs):
        for e, v in c.terms.items():
            mono = tuple((name, k) for name, k in zip(c.vars, e) if k)
            out[(shift, mono)] = Fraction(v)
    return out


def _rank(vectors: list[list[Fraction]]) -> int:
    rows = [list(v) for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(rank + 1, len(rows)):
            if rows[r][col] != 0:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def span_contains(basis: list[Recurrence], rec: Recurrence) -> bool:
    """Whether ``rec`` is a rational linear combination of ``basis``."""
    coords = [_coordinates(r) for r in basis]
    target = _coordinates(rec)
    keys = sorted({k for c in coords + [target] for k in c})
    vecs = [[c.get(k, Fraction(0)) for k in keys] for c in coords]
    t = [target.get(k, Fraction(0)) for k in keys]
    return _rank(vecs + [t]) == _rank(vecs)


# ---------------------------------------------------------------------------
# unrolling


@dataclass
class UnrollResult:
    table: DataTable
    blocked: list


def unroll_recurrence(rec: Recurrence, initial: DataTable, domain, params: dict | None = None) -> UnrollResult:
    """Extend ``initial`` over ``domain`` by solving for the lexicographically leading shift.

    Points whose leading coefficient vanishes, or whose other terms are not yet
    known, are reported as blocked. A known initial value that the recurrence
    can also compute must agree with it.
    """
    support = _lift_support(rec.support, initial.dim)
    rec = Recurrence(support, rec.coeffs)
    comp = rec.compiled(params)
    lead = support.leading()
    k_lead = support.shifts.index(lead)
    table = dict(initial.values)
    blocked = []
    pts = sorted((p,) if isinstance(p, int) else tuple(p) for p in domain)
    for t in pts:
        base = tuple(a - b for a, b in zip(t, lead))
        others = [(s, terms) for s, terms in zip(support, comp) if s != lead]
        needed = [tuple(a + b for a, b in zip(base, s)) for s, _ in others]
        lc = _eval_compiled(comp[k_lead], base) if comp[k_lead] else 0
        computable = lc != 0 and all(q in table for q in needed)
        if not computable:
            if t not in table:
                blocked.append(t)
            continue
        acc = 0
        for (s, terms), q in zip(others, needed):
            if terms:
                acc += _eval_compiled(terms, base) * table[q]
        value = norm(Fraction(-acc) / lc)
        if t in table:
            if table[t] != value:
                raise InconsistentData(f"initial value at {t} is {table[t]}, recurrence gives {value}")
            continue
        table[t] = value
    return UnrollResult(DataTable(table, initial.dim, initial.domain), blocked)


# ---------------------------------------------------------------------------
# built-in data


_BUILTIN_CACHE: dict = {}


def cofactor_table(spec, n_max: int) -> DataTable:
    """``c_{n,j}`` for ``1 <= n <= n_max``, ``0 <= j < n``."""
    from .detengine import cofactor_sequence_of
    from .families import build_family

    key = (spec, n_max)
    if key in _BUILTIN_CACHE:
        return _BUILTIN_CACHE[key]
    full = build_family(spec, n_max).tolist()
    vals = {}
    for n in range(1, n_max + 1):
        c = cofactor_sequence_of([r[:n] for r in full[:n]], n)
        for j, v in enumerate(c.values):
            vals[(n, j)] = v
    table = DataTable(vals, 2, f"1 <= n <= {n_max}, 0 <= j < n")
    _BUILTIN_CACHE[key] = table
    return table


def warmup_spec(a=5, x=Fraction(2, 3)):
    from dataclasses import replace

    from .families import WARMUP

    return replace(WARMUP, base=a).with_x(x)


def builtin_data(name: str, n_max: int | None = None) -> DataTable:
    from .families import DI_FRANCESCO

    if name == "difran-c":
        return cofactor_table(DI_FRANCESCO, n_max or 20)
    if name == "warmup-c":
        return cofactor_table(warmup_spec(), n_max or 12)
    if name == "pow2":
        return DataTable.from_function(lambda n: 2 ** n, range(0, (n_max or 30) + 1), 1, "n >= 0")
    if name == "factorial":
        return DataTable.from_function(math.factorial, range(0, (n_max or 30) + 1), 1, "n >= 0")
    raise KeyError(f"unknown builtin data set {name!r}")


BUILTINS = ("difran-c", "warmup-c", "pow2", "factorial")

# supports of the three operators guessed for the Di Francesco cofactors
DIFRAN_SUPPORTS = ("Sj2,Sn,Sj,1", "SnSj,Sn,Sj,1", "Sn2,Sn,Sj,1")


def _rec(support: str, *coeffs: str) -> Recurrence:
    return Recurrence(ShiftSupport.parse(support), tuple(parse_mpoly(c) for c in coeffs))


# c_{n,j} recurrences of the warmup determinant (parameters a, x)
WARMUP_C_REC1 = _rec(
    "Sn,Sj,1",
    "(1-a) n (j-n) (a j^2+2 a j x+a j+a x^2+a x-x^2-x)",
    "-(j-n+x+2) (a j^3-2 a j^2 n+2 a j^2 x+a j^2-4 a j n x+a j x^2+a j x-2 a n x^2-j x^2+j x+2 n x^2)",
    "a^2 j^2 n^2+a^2 j^2 n x-a^2 j^2 n+2 a^2 j n^2 x+a^2 j n^2+2 a^2 j n x^2-a^2 j n x-a^2 j n"
    "+a^2 n^2 x^2+a^2 n^2 x+a^2 n x^3-a^2 n x+a j^4-4 a j^3 n+2 a j^3 x+4 a j^3+3 a j^2 n^2"
    "-9 a j^2 n x-9 a j^2 n+a j^2 x^2+5 a j^2 x+5 a j^2+6 a j n^2 x+3 a j n^2-6 a j n x^2"
    "-11 a j n x-5 a j n+a j x^2+3 a j x+2 a j+2 a n^2 x^2-2 a n x^3-4 a n x^2-j^2 x^2"
    "+j^2 x+4 j n x^2-j x^2+j x-3 n^2 x^2-n^2 x+n x^3+4 n x^2+n x",
)

WARMUP_C_REC2 = _rec(
    "Sj2,Sj,1",
    "(a j^2+2 a j x+a j+a x^2+a x-x^2-x) (j-n+x+3)",
    "a^2 j^3+3 a^2 j^2 x+3 a^2 j^2+3 a^2 j x^2+6 a^2 j x+2 a^2 j+a^2 x^3+3 a^2 x^2+2 a^2 x-2 a j^3"
    "+2 a j^2 n-5 a j^2 x-8 a j^2+4 a j n x+4 a j n-5 a j x^2-14 a j x-8 a j+2 a n x^2+2 a n x"
    "-2 a x^3-8 a x^2-6 a x+2 j x^2+2 j x-2 n x^2-2 n x+x^3+5 x^2+4 x",
    "-(a-1) (j-n+1) (a j^2+2 a j x+3 a j+a x^2+3 a x+2 a-x^2-x)",
)

# recurrence for the near-diagonal d_n = c_{n,n-1} of the warmup cofactors
WARMUP_DIAGONAL_REC = _rec(
    "Sn2,Sn,1",
    "(n+1) (a n^2+2 a n x-a n+a x^2-a x-x^2+x)",
    "a^2 n^3+3 a^2 n^2 x+3 a^2 n x^2-a^2 n+a^2 x^3-a^2 x-2 a n^3-5 a n^2 x-5 a n x^2"
    "+2 a n-2 a x^3+a x^2+a x+2 n x^2-2 n x+x^3-x^2",
    "-(a-1) (n+x-1) (a n^2+2 a n x+a n+a x^2+a x-x^2+x)",
)

# recurrence for s_n = det A_n / det A_{n-1} of the warmup determinant
WARMUP_H3_REC = _rec(
    "Sn2,Sn,1",
    "(a-1) n",
    "-(a^2 n-6 a n+2 a+n)",
    "-2 (a-1) a (2 n-1)",
)

PAPER_RECURRENCES = {
    "warmup-c1": WARMUP_C_REC1,
    "warmup-c2": WARMUP_C_REC2,
    "warmup-diagonal": WARMUP_DIAGONAL_REC,
    "warmup-h3": WARMUP_H3_REC,
}


# ---------------------------------------------------------------------------
# scikit-learn style wrapper


class RecurrenceGuesser(BaseEstimator):
    """Estimator wrapper around :func:`fit_recurrence`.

    ``fit`` takes a :class:`DataTable` (or a mapping from points to values)
    and stores the recurrence basis in ``recurrences_``; ``score`` is the
    fraction of instantiable points of new data where the first recurrence
    vanishes exactly.
    """

    def __init__(self, support: str = "Sn,1", degree: int = 1, total_degree: int | None = None,
                 slack: int = 10, method: str = "auto"):
        self.support = support
        self.degree = degree
        self.total_degree = total_degree
        self.slack = slack
        self.method = method

    @staticmethod
    def _table(X) -> DataTable:
        if isinstance(X, DataTable):
            return X
        items = dict(X)
        first = next(iter(items))
        dim = 1 if isinstance(first, int) else len(first)
        return DataTable(items, dim)

    def fit(self, X, y=None):
        data = self._table(X)
        self.recurrences_ = fit_recurrence(data, self.support, self.degree, self.total_degree,
                                           self.slack, self.method)
        self.n_points_ = len(instantiable_points(data, _lift_support(
            ShiftSupport.parse(self.support, data.dim), data.dim)))
        return self

    def score(self, X, y=None) -> float:
        if not getattr(self, "recurrences_", None):
            return 0.0
        data = self._table(X)
        rec = self.recurrences_[0]
        pts = instantiable_points(data, _lift_support(rec.support, data.dim))
        if not pts:
            return 1.0
        comp = rec.compiled()
        good = sum(1 for p in pts if rec.residual(data, p, _compiled=comp) == 0)
        return good / len(pts)

    def predict(self, X, domain=None):
        """Unroll the first recurrence from ``X`` over ``domain``."""
        data = self._table(X)
        if domain is None:
            raise ValueError("predict needs a domain to unroll over")
        return unroll_recurrence(self.recurrences_[0], data, domain).table


__all__ = [
    "BUILTINS",
    "DIFRAN_SUPPORTS",
    "DataTable",
    "InconsistentData",
    "InsufficientData",
    "NullspaceError",
    "PAPER_RECURRENCES",
    "Recurrence",
    "RecurrenceGuesser",
    "ShiftSupport",
    "UnrollResult",
    "WARMUP_C_REC1",
    "WARMUP_C_REC2",
    "WARMUP_DIAGONAL_REC",
    "WARMUP_H3_REC",
    "build_system",
    "builtin_data",
    "check_recurrence",
    "cofactor_table",
    "fit_recurrence",
    "fit_with_holdout",
    "instantiable_points",
    "is_minimal_support",
    "monomials",
    "nullity_mod_p",
    "nullspace",
    "nullspace_fraction_free",
    "nullspace_modular",
    "span_contains",
    "support_nullity_mod_p",
    "unroll_recurrence",
    "warmup_spec",
]
