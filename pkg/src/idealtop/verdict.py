"""Three-valued verdicts with machine-checkable certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Union

from .groups import Outcome

IN, OUT, UNDECIDED = Outcome.IN, Outcome.OUT, Outcome.UNDECIDED


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (bool, int, float, str)) or v is None:
        return v
    return str(v)


@dataclass(frozen=True)
class ExceptionSets:
    """E_k for every critical k, each a descriptor the ideal contains.

    ``sufficient_k`` is the scale beyond which E_k no longer changes.
    """

    sets: tuple  # of (k, descriptor)
    sufficient_k: int
    kind: str = field(default="exception-sets", init=False)

    def to_dict(self):
        return {"kind": self.kind, "sufficient_k": self.sufficient_k,
                "sets": [{"k": k, "descriptor": str(d)} for k, d in self.sets]}


@dataclass(frozen=True)
class DensityWitness:
    k: Optional[int]
    descriptor: Any
    upper_density: Fraction
    kind: str = field(default="density-witness", init=False)

    def to_dict(self):
        return {"kind": self.kind, "k": self.k, "descriptor": str(self.descriptor),
                "upper_density": str(self.upper_density)}


@dataclass(frozen=True)
class IdealWitness:
    """Out witness when the exception set has density 0 but is still not in the ideal."""

    k: Optional[int]
    descriptor: Any
    ideal: str
    reason: str
    kind: str = field(default="ideal-witness", init=False)

    def to_dict(self):
        return {"kind": self.kind, "k": self.k, "descriptor": str(self.descriptor),
                "ideal": self.ideal, "reason": self.reason}


@dataclass(frozen=True)
class SetFacts:
    descriptor: Any
    facts: dict
    kind: str = field(default="set-facts", init=False)

    def to_dict(self):
        return {"kind": self.kind, "descriptor": str(self.descriptor), "facts": _jsonable(self.facts)}


@dataclass(frozen=True)
class HorizonCertificate:
    params: dict
    kind: str = field(default="horizon-limit", init=False)

    def to_dict(self):
        return {"kind": self.kind, "params": _jsonable(self.params)}


Certificate = Union[ExceptionSets, DensityWitness, IdealWitness, SetFacts, HorizonCertificate]


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    certificate: Certificate

    def __post_init__(self):
        if self.outcome is UNDECIDED and not isinstance(self.certificate, HorizonCertificate):
            raise ValueError("Undecided verdicts must carry a horizon certificate")

    @property
    def is_in(self) -> bool:
        return self.outcome is IN

    @property
    def is_out(self) -> bool:
        return self.outcome is OUT

    @property
    def decided(self) -> bool:
        return self.outcome is not UNDECIDED

    def to_dict(self):
        return {"outcome": str(self.outcome), "certificate": self.certificate.to_dict()}


def undecided(**params) -> Verdict:
    return Verdict(UNDECIDED, HorizonCertificate(params))


jsonable = _jsonable
