"""Exact evaluation, verification and search for binomial determinant families."""

from __future__ import annotations

from .detengine import cofactor_sequence, det, det_bareiss, det_cofactor_oracle
from .exact import binomial, is_prime, rat
from .families import D, E, F, G, FamilySpec, build_family, parse_spec
from .poly import MPoly, Poly, parse_mpoly
from .report import CheckItem, Report

__version__ = "0.1.0"

__all__ = [
    "CheckItem",
    "D",
    "E",
    "F",
    "FamilySpec",
    "G",
    "MPoly",
    "Poly",
    "Report",
    "binomial",
    "build_family",
    "cofactor_sequence",
    "det",
    "det_bareiss",
    "det_cofactor_oracle",
    "is_prime",
    "parse_mpoly",
    "parse_spec",
    "rat",
]
