"""Submeasures on finite subsets of N0 and their tail behaviour on descriptors."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import analysis


@dataclass(frozen=True)
class Submeasure:
    """An exact submeasure given by its values on finite sets.

    ``tail_limit`` optionally maps a descriptor A to lim phi(A \\ [0, n]) in
    closed form.  Lower semicontinuity is declared by whoever builds the
    object; it cannot be checked from finitely many values.
    """

    name: str
    evaluate: Callable[[frozenset], Fraction]
    total: Fraction
    tail_limit: Optional[Callable] = None

    def __call__(self, F) -> Fraction:
        return self.evaluate(frozenset(F))

    def __str__(self) -> str:
        return self.name


def _density_value(F: frozenset) -> Fraction:
    best = Fraction(0)
    for i, f in enumerate(sorted(F), start=1):
        # the running ratio peaks right at an element
        best = max(best, Fraction(i, f + 1))
    return best


def _harmonic_value(F: frozenset) -> Fraction:
    total = sum((Fraction(1, n + 1) for n in F), Fraction(0))
    return min(total, Fraction(1))


def _density_tail(A) -> Fraction:
    return analysis.density(A)


def _harmonic_tail(A) -> Fraction:
    # a positive-density set has divergent harmonic sum; density-zero
    # descriptors are finite sets plus subsets of sparse families
    return Fraction(0) if analysis.density(A) == 0 else Fraction(1)


DENSITY = Submeasure("density", _density_value, Fraction(1), _density_tail)
HARMONIC = Submeasure("harmonic", _harmonic_value, Fraction(1), _harmonic_tail)

BUILTIN = {"density": DENSITY, "harmonic": HARMONIC}


def submeasure_eval(phi: Submeasure, F) -> Fraction:
    return phi(F)
