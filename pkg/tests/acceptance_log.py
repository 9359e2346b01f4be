"""Collects one result line per acceptance criterion for the terminal summary."""

from __future__ import annotations

LINES: list[str] = []


def record(number, ok: bool, summary: str, elapsed: float | None = None) -> str:
    tail = f" ({elapsed:.1f}s)" if elapsed is not None else ""
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {summary}{tail}"
    LINES.append(line)
    print(line)
    return line
