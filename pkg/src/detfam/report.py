"""Check records and their JSON/CSV encoding.

Big integers are written as decimal strings, rationals as ``p/q`` and
polynomials in their canonical text form, so reports are byte-stable.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

SCHEMA = 1

PASS = "pass"
FAIL = "fail"
FALSIFIED = "conjecture-falsified"
ERROR = "error"

EXIT_CODES = {PASS: 0, FALSIFIED: 2, FAIL: 1, ERROR: 1}


def encode_value(v):
    """JSON-safe exact encoding of scalars and polynomials."""
    if v is None or isinstance(v, (bool, str)):
        return v
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}" if v.denominator != 1 else str(v.numerator)
    if hasattr(v, "to_text"):
        return v.to_text()
    if isinstance(v, (list, tuple)):
        return [encode_value(x) for x in v]
    if isinstance(v, dict):
        return {str(k): encode_value(x) for k, x in v.items()}
    return str(v)


@dataclass
class CheckItem:
    """One grid point: ``lhs`` against ``rhs`` at ``n`` (and ``x``)."""

    label: str
    equal: bool
    n: int | None = None
    x: object = None
    lhs: object = None
    rhs: object = None
    asserted: bool = True
    note: str = ""
    elapsed: float | None = None

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "id": self.label,
            "n": self.n,
            "x": encode_value(self.x),
            "lhs": encode_value(self.lhs),
            "rhs": encode_value(self.rhs),
            "equal": self.equal,
            "asserted": self.asserted,
        }
        if self.note:
            d["note"] = self.note
        if timing and self.elapsed is not None:
            d["elapsed"] = round(self.elapsed, 6)
        return d


@dataclass
class Report:
    """Outcome of one verifier over its grid.

    ``kind`` is ``"theorem"`` or ``"conjecture"``; a failed asserted item makes
    the report ``fail`` for theorems and ``conjecture-falsified`` for conjectures.
    """

    id: str
    kind: str = "theorem"
    items: list[CheckItem] = field(default_factory=list)
    error: str | None = None

    def add(self, item: CheckItem) -> CheckItem:
        self.items.append(item)
        return item

    @property
    def failures(self) -> list[CheckItem]:
        return [it for it in self.items if it.asserted and not it.equal]

    @property
    def status(self) -> str:
        if self.error is not None:
            return ERROR
        if self.failures:
            return FALSIFIED if self.kind == "conjecture" else FAIL
        return PASS

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def first_failure(self) -> CheckItem | None:
        f = self.failures
        return f[0] if f else None

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "id": self.id,
            "kind": self.kind,
            "status": self.status,
            "checked": sum(1 for it in self.items if it.asserted),
            "failures": len(self.failures),
            "items": [it.to_dict(timing) for it in self.items],
        }
        if self.error is not None:
            d["error"] = self.error
        return d


def overall_status(reports) -> str:
    statuses = {r.status for r in reports}
    for s in (ERROR, FAIL, FALSIFIED):
        if s in statuses:
            return s
    return PASS


def dumps(doc: dict, pretty: bool = False) -> str:
    doc = {"schema": SCHEMA, **doc}
    if pretty:
        return json.dumps(doc, indent=2, sort_keys=False)
    return json.dumps(doc, separators=(",", ":"), sort_keys=False)


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["report", "id", "n", "x", "lhs", "rhs", "equal", "asserted"])
    for r in reports:
        for it in r.items:
            d = it.to_dict()
            w.writerow([r.id, d["id"], d["n"], d["x"], d["lhs"], d["rhs"], d["equal"], d["asserted"]])
    return buf.getvalue()
