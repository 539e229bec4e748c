"""Exact analysis and normalization of plane polynomial maps whose branched value set is a line."""

from .errors import (DegenerateElimination, DegenerateMap, InvalidParams, Lemma1MiddleCoefficients,
                     NotInClass, NumericUnstable, ParseError, PlaneMapsError, RectifyFailed,
                     ReplayMismatch, ShapeMismatch)
from .poly import Poly, UPoly, gcd, resultant, squarefree_part, up_decompose, up_roots_numeric
from .textio import format_poly, parse_poly

__all__ = [
    "DegenerateElimination", "DegenerateMap", "InvalidParams", "Lemma1MiddleCoefficients",
    "NotInClass", "NumericUnstable", "ParseError", "PlaneMapsError", "RectifyFailed",
    "ReplayMismatch", "ShapeMismatch", "Poly", "UPoly", "gcd", "resultant", "squarefree_part",
    "up_decompose", "up_roots_numeric", "format_poly", "parse_poly",
]

__version__ = "0.1.0"
