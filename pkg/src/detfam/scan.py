"""Parameter-box search for determinant sequences that factor completely.

Every spec in a box of ``(alpha, beta, gamma, delta)`` values is evaluated for
``n = 1..N``; each determinant is factored and the sequence is flagged when
all its primes stay below ``slope * n + 10``. Flagged sequences are then
compared pairwise for relations ``det_A(n) = c * det_B(n - k)``.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import random
import re
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .detengine import det
from .exact import is_prime
from .families import LETTER_SHAPE, SHAPE_LETTER, FamilySpec
from .report import SCHEMA, encode_value

TRIAL_LIMIT = 10**6
CERTAIN_LIMIT = 2**64
SMOOTH_OFFSET = 10
_BLOCK = 512


# ---------------------------------------------------------------------------
# integer factorization


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    sieve = bytearray([1]) * (TRIAL_LIMIT + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(TRIAL_LIMIT) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, TRIAL_LIMIT + 1, p)))
    return tuple(i for i in range(TRIAL_LIMIT + 1) if sieve[i])


@lru_cache(maxsize=1)
def _prime_blocks() -> tuple[tuple[int, tuple[int, ...]], ...]:
    """Primes below the trial limit in blocks, each with its product."""
    ps = _small_primes()
    return tuple((math.prod(ps[i : i + _BLOCK]), ps[i : i + _BLOCK])
                 for i in range(0, len(ps), _BLOCK))


@dataclass(frozen=True)
class Factorization:
    """``sign * prod(p**e)``; negative exponents belong to the denominator.

    ``probable`` lists prime factors above 2**64 whose primality rests on a
    Miller-Rabin test rather than a deterministic one.
    """

    sign: int
    primes: tuple[tuple[int, int], ...]
    probable: tuple[int, ...] = ()

    @property
    def value(self) -> int | Fraction:
        num = den = 1
        for p, e in self.primes:
            if e > 0:
                num *= p**e
            else:
                den *= p ** (-e)
        v = Fraction(self.sign * num, den)
        return v.numerator if v.denominator == 1 else v

    def multiset(self) -> list[int]:
        return [p for p, e in self.primes for _ in range(abs(e))]

    @property
    def largest_prime(self) -> int:
        return max((p for p, _ in self.primes), default=1)

    def to_text(self) -> str:
        if not self.primes:
            return str(self.sign)
        parts = [f"{p}^{e}" if e != 1 else str(p) for p, e in self.primes]
        body = "*".join(parts)
        return f"-{body}" if self.sign < 0 else body

    def to_json(self) -> dict:
        d = {"sign": self.sign, "primes": [[str(p), e] for p, e in self.primes]}
        if self.probable:
            d["probable"] = [str(p) for p in self.probable]
        return d


def _rho(n: int, rng: random.Random) -> int:
    """A nontrivial factor of composite odd ``n`` (Brent's cycle variant)."""
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split_large(n: int, out: Counter, rng: random.Random) -> None:
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] += 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = _rho(m, rng)
        stack += [d, m // d]


def _factor_positive(n: int) -> Counter:
    out: Counter = Counter()
    for p in (2, 3, 5, 7):
        while n % p == 0:
            out[p] += 1
            n //= p
    for prod, block in _prime_blocks():
        if n == 1:
            break
        if block[0] * block[0] > n:
            out[n] += 1
            return out
        if math.gcd(prod, n) == 1:
            continue
        for p in block:
            while n % p == 0:
                out[p] += 1
                n //= p
    if n > 1:
        # the seed is fixed so factorizations are reproducible
        _split_large(n, out, random.Random(n))
    return out


def factor_integer(v) -> Factorization:
    """Complete factorization of a nonzero integer (or rational)."""
    v = Fraction(v)
    if v == 0:
        raise ValueError("cannot factor zero")
    counts = _factor_positive(abs(v.numerator))
    for p, e in _factor_positive(v.denominator).items():
        counts[p] -= e
    primes = tuple(sorted((p, e) for p, e in counts.items() if e and p > 1))
    probable = tuple(p for p, _ in primes if p >= CERTAIN_LIMIT)
    return Factorization(1 if v > 0 else -1, primes, probable)


# ---------------------------------------------------------------------------
# smoothness


def smooth_bound(n: int, slope: int) -> int:
    return slope * n + SMOOTH_OFFSET


def is_smooth_sequence(values, N: int, slope: int) -> bool:
    """True iff every prime of ``|values[n-1]|`` is at most ``slope*n + 10`` for n <= N.

    Entries may be integers, rationals or :class:`Factorization` objects.
    A zero anywhere in range makes the sequence ineligible.
    """
    values = list(values)
    if not values:
        raise ValueError("empty sequence")
    for n, v in enumerate(values[:N], start=1):
        f = v if isinstance(v, Factorization) else None
        if f is None:
            if v == 0:
                return False
            f = factor_integer(v)
        if f.largest_prime > smooth_bound(n, slope):
            return False
    return True


# ---------------------------------------------------------------------------
# configuration


_KEY_ALIASES = {
    "family": "family", "kind": "family", "letter": "family",
    "base": "base", "step": "step",
    "n": "n_max", "n_max": "n_max",
    "slope": "slope", "smoothness_slope": "slope", "smoothnessslope": "slope",
    "relation_shift_max": "relation_shift_max", "relationshiftmax": "relation_shift_max",
    "jobs": "jobs", "workers": "jobs",
}
_PARAM_ALIASES = {"alpha": "alpha", "α": "alpha", "beta": "beta", "β": "beta",
                  "gamma": "gamma", "γ": "gamma", "delta": "delta", "δ": "delta"}
_RANGE_LINE = re.compile(r"range\s+(\S+)\s*=\s*(-?\d+)\s*\.\.\s*(-?\d+)$")
_KV_LINE = re.compile(r"([A-Za-z_]\w*)\s*=\s*(\S+)$")


class ConfigError(ValueError):
    def __init__(self, line_no: int, msg: str):
        super().__init__(f"line {line_no}: {msg}")
        self.line_no = line_no


@dataclass(frozen=True)
class ScanConfig:
    """A box of family parameters and the classification settings."""

    base: int = 2
    step: int = 2
    alpha: tuple[int, int] = (-2, 2)
    beta: tuple[int, int] = (-2, 2)
    gamma: tuple[int, int] = (-4, 4)
    delta: tuple[int, int] = (-4, 4)
    n_max: int = 8
    slope: int = 7
    relation_shift_max: int = 3
    jobs: int | None = None

    def __post_init__(self):
        if self.n_max < 4:
            raise ValueError("N must be at least 4")
        if self.slope < 1:
            raise ValueError("slope must be at least 1")
        if not 0 <= self.relation_shift_max <= 3:
            raise ValueError("relation shift must lie in 0..3")
        for name in ("alpha", "beta", "gamma", "delta"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise ValueError(f"empty range for {name}")

    @classmethod
    def for_letter(cls, letter: str, **kw) -> "ScanConfig":
        base, step = LETTER_SHAPE[letter]
        return cls(base=base, step=step, **kw)

    @property
    def letter(self) -> str | None:
        return SHAPE_LETTER.get((self.base, self.step))

    def specs(self) -> list[FamilySpec]:
        axes = [range(lo, hi + 1) for lo, hi in (self.alpha, self.beta, self.gamma, self.delta)]
        return [FamilySpec(self.base, self.step, *p) for p in itertools.product(*axes)]

    @classmethod
    def parse(cls, text: str) -> "ScanConfig":
        """Read ``key = value`` and ``range alpha = lo..hi`` lines; ``#`` starts a comment."""
        kw: dict = {}
        for no, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            m = _RANGE_LINE.match(line)
            if m:
                name = _PARAM_ALIASES.get(m.group(1).lower())
                if name is None:
                    raise ConfigError(no, f"unknown parameter {m.group(1)!r}")
                kw[name] = (int(m.group(2)), int(m.group(3)))
                continue
            m = _KV_LINE.match(line)
            if not m:
                raise ConfigError(no, f"cannot parse {line!r}")
            key = _KEY_ALIASES.get(m.group(1).lower())
            if key is None:
                raise ConfigError(no, f"unknown key {m.group(1)!r}")
            val = m.group(2)
            if key == "family":
                if val not in LETTER_SHAPE:
                    raise ConfigError(no, f"unknown family {val!r}")
                kw["base"], kw["step"] = LETTER_SHAPE[val]
                continue
            try:
                kw[key] = int(val)
            except ValueError:
                raise ConfigError(no, f"{m.group(1)} needs an integer") from None
        try:
            return cls(**kw)
        except ValueError as e:
            raise ConfigError(0, str(e)) from None

    @classmethod
    def load(cls, path) -> "ScanConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.parse(fh.read())


# ---------------------------------------------------------------------------
# per-spec work


SMOOTH = "smooth"
ROUGH = "not-smooth"
ZERO = "zero"
ERROR = "error"


@dataclass(frozen=True)
class ScanRelation:
    """``det_self(n) = constant * det_other(n + shift)`` on the overlapping range."""

    other: str
    shift: int
    constant: int | Fraction

    def to_json(self) -> dict:
        return {"other": self.other, "shift": self.shift,
                "constant": encode_value(self.constant)}


@dataclass
class ScanReport:
    spec: FamilySpec
    values: list = field(default_factory=list)
    factors: list = field(default_factory=list)
    smooth: bool = False
    status: str = ROUGH
    largest_prime_by_n: list = field(default_factory=list)
    zero_at: list = field(default_factory=list)
    relations: list = field(default_factory=list)
    error: str | None = None

    @property
    def key(self) -> tuple:
        s = self.spec
        return (s.base, s.step) + s.params

    @property
    def equivalence_key(self) -> tuple[int, int, int]:
        return equivalence_key(self.spec)

    def to_json(self) -> dict:
        d = {
            "schema": SCHEMA,
            "spec": self.spec.to_text(),
            "params": list(self.spec.params),
            "status": self.status,
            "smooth": self.smooth,
            "values": [encode_value(v) for v in self.values],
            "factors": [f.to_json() if f is not None else None for f in self.factors],
            "largestPrimeByN": [str(p) if p is not None else None
                                for p in self.largest_prime_by_n],
            "zeroAt": self.zero_at,
            "relations": [r.to_json() for r in self.relations],
            "equivalenceKey": list(self.equivalence_key),
        }
        if self.error is not None:
            d["error"] = self.error
        return d


def equivalence_key(spec: FamilySpec) -> tuple[int, int, int]:
    """Invariant of the parameter shift that borders a matrix by one row and column.

    For step ``m`` the lower-right ``n x n`` block of the spec with parameters
    ``(alpha-m, beta-1, gamma-m-1, delta-m+1)`` at size ``n+1`` is this spec at
    size ``n``.
    """
    m = spec.step
    a, b, c, d = spec.params
    return (a - m * b, c - (m + 1) * b, d - (m - 1) * b)


def scan_spec(spec: FamilySpec, n_max: int, slope: int) -> ScanReport:
    rep = ScanReport(spec)
    try:
        for n in range(1, n_max + 1):
            v = det(spec, n)
            rep.values.append(v)
            if v == 0:
                rep.zero_at.append(n)
                rep.factors.append(None)
                rep.largest_prime_by_n.append(None)
                continue
            f = factor_integer(v)
            rep.factors.append(f)
            rep.largest_prime_by_n.append(f.largest_prime)
    except Exception as e:  # recorded, never fatal
        rep.status, rep.error = ERROR, f"{type(e).__name__}: {e}"
        return rep
    if rep.zero_at:
        rep.status = ZERO
        if len(rep.zero_at) == n_max:
            rep.error = "all determinants vanish"
        return rep
    rep.smooth = all(p <= smooth_bound(n, slope)
                     for n, p in enumerate(rep.largest_prime_by_n, start=1))
    rep.status = SMOOTH if rep.smooth else ROUGH
    return rep


def _scan_task(args) -> ScanReport:
    return scan_spec(*args)


# ---------------------------------------------------------------------------
# relations


RELATION_N_MIN = 4


def find_relation(a: list, b: list, k: int, n_min: int = RELATION_N_MIN):
    """Constant ``c`` with ``a[n] = c * b[n - k]`` for all overlapping ``n >= n_min``.

    Sequences are indexed from ``n = 1``; at least two overlapping points are
    required. Returns ``None`` when no such constant exists.
    """
    ns = [n for n in range(max(n_min, k + 1), len(a) + 1) if n - k <= len(b)]
    if len(ns) < 2:
        return None
    first = ns[0]
    if b[first - k - 1] == 0:
        return None
    c = Fraction(a[first - 1]) / Fraction(b[first - k - 1])
    for n in ns[1:]:
        if a[n - 1] != c * b[n - k - 1]:
            return None
    return c.numerator if c.denominator == 1 else c


def detect_relations(reports: list[ScanReport], shift_max: int) -> None:
    """Attach constant-ratio relations between smooth reports (both directions)."""
    smooth = [r for r in reports if r.smooth]
    for ra, rb in itertools.permutations(smooth, 2):
        for k in range(0, shift_max + 1):
            if k == 0 and ra.key > rb.key:
                continue
            c = find_relation(ra.values, rb.values, k)
            if c is None:
                continue
            inv = Fraction(1) / c
            ra.relations.append(ScanRelation(rb.spec.to_text(), -k, c))
            rb.relations.append(ScanRelation(
                ra.spec.to_text(), k, inv.numerator if inv.denominator == 1 else inv))
    for r in smooth:
        r.relations.sort(key=lambda rel: (rel.shift, rel.other))


def equivalence_classes(reports: list[ScanReport]) -> dict[tuple, list[str]]:
    """Smooth specs grouped by :func:`equivalence_key`; not deduplicated."""
    classes: dict[tuple, list[str]] = {}
    for r in reports:
        if r.smooth:
            classes.setdefault(r.equivalence_key, []).append(r.spec.to_text())
    return dict(sorted(classes.items()))


# ---------------------------------------------------------------------------
# driver


def run_scan(cfg: ScanConfig, jobs: int | None = None) -> list[ScanReport]:
    """Evaluate and classify every spec in the box; output order is by spec."""
    jobs = jobs if jobs is not None else cfg.jobs
    tasks = [(s, cfg.n_max, cfg.slope) for s in cfg.specs()]
    if jobs is None or jobs <= 1:
        reports = [_scan_task(t) for t in tasks]
    else:
        chunk = max(1, len(tasks) // (8 * jobs))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_scan_task, tasks, chunksize=chunk))
    reports.sort(key=lambda r: r.key)
    detect_relations(reports, cfg.relation_shift_max)
    return reports


def to_jsonl(reports: list[ScanReport]) -> str:
    return "".join(json.dumps(r.to_json(), separators=(",", ":")) + "\n" for r in reports)


def to_csv(reports: list[ScanReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["spec", "alpha", "beta", "gamma", "delta", "status", "smooth",
                "largest_prime", "zero_at", "relations"])
    for r in reports:
        primes = [p for p in r.largest_prime_by_n if p is not None]
        w.writerow([r.spec.to_text(), *r.spec.params, r.status, r.smooth,
                    max(primes, default=""), " ".join(map(str, r.zero_at)),
                    len(r.relations)])
    return buf.getvalue()


def summary(reports: list[ScanReport]) -> dict:
    counts = Counter(r.status for r in reports)
    return {
        "schema": SCHEMA,
        "specs": len(reports),
        "counts": {k: counts[k] for k in (SMOOTH, ROUGH, ZERO, ERROR)},
        "smooth": [r.spec.to_text() for r in reports if r.smooth],
        "zero": [r.spec.to_text() for r in reports if r.status == ZERO],
        "equivalenceClasses": [{"key": list(k), "specs": v}
                               for k, v in equivalence_classes(reports).items()],
    }


__all__ = [
    "ConfigError",
    "Factorization",
    "ScanConfig",
    "ScanRelation",
    "ScanReport",
    "detect_relations",
    "equivalence_classes",
    "equivalence_key",
    "factor_integer",
    "find_relation",
    "is_smooth_sequence",
    "run_scan",
    "scan_spec",
    "smooth_bound",
    "summary",
    "to_csv",
    "to_jsonl",
]
