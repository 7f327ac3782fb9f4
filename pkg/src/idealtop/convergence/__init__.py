"""Ideal convergence of integer sequences at points of the circle."""

from __future__ import annotations

from .cache import CACHE, ResidueCache
from .engine import (critical_k, critical_scales, exception_set, extract_convergent_cofinite,
                     iconverges, sparse_sum_exception_set)
from .residues import ResidueCycle, Split, residue_analysis, residue_tree
from .sequences import (Affine, Fact, Interleave, LinComb, ListSeq, Plant, Poly, Pow, SequenceSpec,
                        SparseSumSeq, Vec, is_integer_valued)

__all__ = [
    "CACHE", "ResidueCache", "critical_k", "critical_scales", "exception_set",
    "extract_convergent_cofinite", "iconverges", "sparse_sum_exception_set", "ResidueCycle",
    "Split", "residue_analysis", "residue_tree", "Affine", "Fact", "Interleave", "LinComb",
    "ListSeq", "Plant", "Poly", "Pow", "SequenceSpec", "SparseSumSeq", "Vec", "is_integer_valued",
]
