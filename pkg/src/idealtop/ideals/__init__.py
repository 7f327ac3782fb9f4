"""Subsets of N0, their densities, submeasures and the catalog of ideals."""

from __future__ import annotations

from .analysis import density, density_bounds, eventual_threshold, finite_elements, is_infinite, is_subset
from .catalog import (DENSITY, FIN, Density, Exhaustive, Fin, IdealSpec, PowersetOf, Summable,
                      exh_member, ideal_member, parse_ideal, parse_ideal_at)
from .descriptors import (ALL, EMPTY, EVENS, Combo, EvPeriodic, Finite, SetDescriptor, Sparse,
                          complement, count, diff, inter, member, parse_descriptor,
                          parse_descriptor_at, union)
from .submeasures import DENSITY as PHI_DENSITY
from .submeasures import HARMONIC as PHI_HARMONIC
from .submeasures import Submeasure, submeasure_eval

__all__ = [
    "ALL", "EMPTY", "EVENS", "Combo", "EvPeriodic", "Finite", "SetDescriptor", "Sparse",
    "complement", "count", "diff", "inter", "member", "union", "parse_descriptor",
    "parse_descriptor_at", "density", "density_bounds", "eventual_threshold", "finite_elements",
    "is_infinite", "is_subset", "DENSITY", "FIN", "Density", "Exhaustive", "Fin", "IdealSpec",
    "PowersetOf", "Summable", "exh_member", "ideal_member", "parse_ideal", "parse_ideal_at",
    "PHI_DENSITY", "PHI_HARMONIC", "Submeasure", "submeasure_eval",
]
