"""Exact computations with ideal convergence in abelian groups and on the circle."""

from __future__ import annotations

__version__ = "0.1.0"

from .groups import (CirclePoint, FiniteAb, IntVector, NumericCirclePoint, Outcome, SparseSum,
                     circle_norm, in_Tk, normalize_circle, pair_eval, parse_point)
from .verdict import Verdict

__all__ = [
    "__version__", "CirclePoint", "FiniteAb", "IntVector", "NumericCirclePoint", "Outcome",
    "SparseSum", "circle_norm", "in_Tk", "normalize_circle", "pair_eval", "parse_point", "Verdict",
]
