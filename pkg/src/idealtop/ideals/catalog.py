"""Catalog of ideals on N0 and exact membership for descriptors."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .._scan import Scanner
from ..verdict import (IN, OUT, DensityWitness, IdealWitness, SetFacts, Verdict,
                       undecided)
from . import analysis
from .descriptors import diff, parse_descriptor_at
from .submeasures import BUILTIN, Submeasure

SCAN_HORIZON = 1 << 14


@dataclass(frozen=True)
class Fin:
    declared_free = True
    declared_proper = True
    declared_p_ideal = True

    def __str__(self) -> str:
        return "fin"


@dataclass(frozen=True)
class Density:
    declared_free = True
    declared_proper = True
    declared_p_ideal = True

    def __str__(self) -> str:
        return "density"


def _invsqrt(n: int) -> Fraction:
    return Fraction(1, math.isqrt(n) + 1)


SUMMABLE_WEIGHTS = {
    "harmonic": lambda n: Fraction(1, n + 1),
    "invsqrt": _invsqrt,
}


@dataclass(frozen=True)
class Summable:
    """{A : sum of weight(n) over A converges}.

    ``harmonic`` is 1/(n+1); ``invsqrt`` is 1/(isqrt(n)+1), which is still
    summable on powers and factorials but diverges along the squares.
    """

    weight: str = "harmonic"
    declared_free = True
    declared_proper = True
    declared_p_ideal = True

    def __post_init__(self):
        if self.weight not in SUMMABLE_WEIGHTS:
            raise ValueError(f"no closed-form tails for the weight {self.weight!r}")

    def __call__(self, n: int) -> Fraction:
        return SUMMABLE_WEIGHTS[self.weight](n)

    def __str__(self) -> str:
        return f"summable:{self.weight}"


@dataclass(frozen=True)
class Exhaustive:
    phi: Submeasure
    declared_free = True
    declared_proper = True
    declared_p_ideal = True

    def __str__(self) -> str:
        return f"exh:{self.phi.name}"


@dataclass(frozen=True)
class PowersetOf:
    base: object
    declared_free = False
    declared_proper = True
    declared_p_ideal = True

    def __str__(self) -> str:
        return f"powerset({self.base})"


IdealSpec = Union[Fin, Density, Summable, Exhaustive, PowersetOf]

FIN, DENSITY = Fin(), Density()


# ---------------------------------------------------------------- membership

def _finite_facts(A, elements):
    return SetFacts(A, {"finite": True, "elements": list(elements)})


def _fin_member(A, k):
    inf = analysis.is_infinite(A)
    if inf is None:
        return undecided(descriptor=str(A), reason="finiteness depends on an open exponential equation")
    if inf:
        return Verdict(OUT, IdealWitness(k, A, "fin", "infinite"))
    els = analysis.finite_elements(A)
    if els is None:
        return Verdict(IN, SetFacts(A, {"finite": True}))
    return Verdict(IN, _finite_facts(A, els))


def _density_member(A, k):
    d = analysis.density(A)
    if d > 0:
        return Verdict(OUT, DensityWitness(k, A, d))
    return Verdict(IN, SetFacts(A, {"upper_density": d}))


def _summable_member(I: Summable, A, k):
    d = analysis.density(A)
    if d > 0:
        return Verdict(OUT, DensityWitness(k, A, d))
    if I.weight == "invsqrt" and analysis.square_family_positive(A):
        return Verdict(OUT, IdealWitness(k, A, str(I), "a square family contributes a divergent 1/(i+1) series"))
    return Verdict(IN, SetFacts(A, {"upper_density": d, "series": "convergent"}))


def exh_member(phi: Submeasure, A, k: Optional[int] = None, horizon: int = 4096) -> Verdict:
    """Is lim phi(A minus [0,n]) = 0?  Closed form when phi provides one."""
    if phi.tail_limit is not None:
        lim = Fraction(phi.tail_limit(A))
        if lim == 0:
            return Verdict(IN, SetFacts(A, {"tail_limit": lim, "submeasure": phi.name}))
        if phi.name == "density":
            return Verdict(OUT, DensityWitness(k, A, lim))
        return Verdict(OUT, IdealWitness(k, A, f"exh:{phi.name}", f"tail values tend to {lim}"))
    if analysis.is_infinite(A) is False:
        return Verdict(IN, SetFacts(A, {"finite": True, "tail": "eventually empty"}))
    points = [n for n in range(horizon + 1) if A.contains(n)]
    tails = [phi(frozenset(p for p in points if p > n)) for n in (0, horizon // 4, horizon // 2)]
    return undecided(descriptor=str(A), submeasure=phi.name, horizon=horizon, sampled_tails=tails)


def _powerset_member(I: PowersetOf, A, k):
    rest = diff(A, I.base)
    inf = analysis.is_infinite(rest)
    if inf is False:
        els = analysis.finite_elements(rest)
        if els is not None:
            if not els:
                return Verdict(IN, SetFacts(A, {"subset_of": str(I.base)}))
            return Verdict(OUT, IdealWitness(k, A, str(I), f"{els[0]} lies outside the base set"))
    for n in range(SCAN_HORIZON + 1):
        if rest.contains(n):
            return Verdict(OUT, IdealWitness(k, A, str(I), f"{n} lies outside the base set"))
    return undecided(descriptor=str(A), ideal=str(I), horizon=SCAN_HORIZON)


def ideal_member(I: IdealSpec, A, k: Optional[int] = None) -> Verdict:
    if isinstance(I, Fin):
        return _fin_member(A, k)
    if isinstance(I, Density):
        return _density_member(A, k)
    if isinstance(I, Summable):
        return _summable_member(I, A, k)
    if isinstance(I, Exhaustive):
        return exh_member(I.phi, A, k)
    if isinstance(I, PowersetOf):
        return _powerset_member(I, A, k)
    raise TypeError(f"not an ideal: {I!r}")


# ------------------------------------------------------------------- grammar

_IDEAL_WORDS = ["fin", "density", "summable:", "exh:", "powerset("]


def parse_ideal_at(sc: Scanner) -> IdealSpec:
    if sc.accept("fin"):
        return FIN
    if sc.accept("density"):
        return DENSITY
    if sc.accept("summable:"):
        for w in SUMMABLE_WEIGHTS:
            if sc.accept(w):
                return Summable(w)
        sc.fail(list(SUMMABLE_WEIGHTS))
    if sc.accept("exh:"):
        for name, phi in BUILTIN.items():
            if sc.accept(name):
                return Exhaustive(phi)
        sc.fail(list(BUILTIN))
    if sc.accept("powerset("):
        base = parse_descriptor_at(sc)
        sc.expect(")")
        return PowersetOf(base)
    sc.fail(_IDEAL_WORDS)


def parse_ideal(text: str) -> IdealSpec:
    sc = Scanner(text.strip())
    I = parse_ideal_at(sc)
    sc.end()
    return I
