"""Finitely described sequences u : N0 -> G, evaluable at any index."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from ..errors import HorizonLimit
from ..groups import IntVector, SparseSum


@dataclass(frozen=True)
class Pow:
    c: int

    def at(self, n: int) -> int:
        return self.c ** n

    def __str__(self) -> str:
        return f"pow:{self.c}"


@dataclass(frozen=True)
class Fact:
    def at(self, n: int) -> int:
        return math.factorial(n)

    def __str__(self) -> str:
        return "fact"


@dataclass(frozen=True)
class Poly:
    """Polynomial in n, coefficients listed from the highest degree down."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a polynomial needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(int(a) for a in self.coeffs))

    def at(self, n: int) -> int:
        v = 0
        for a in self.coeffs:
            v = v * n + a
        return v

    def __str__(self) -> str:
        return "poly:" + ",".join(map(str, self.coeffs))


@dataclass(frozen=True)
class ListSeq:
    """Explicit values; ``cycle`` > 0 repeats the last ``cycle`` values forever."""

    values: tuple[int, ...]
    cycle: int = 0
    path: str = ""

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if self.cycle < 0 or self.cycle > len(self.values):
            raise ValueError("tail cycle longer than the list")

    @classmethod
    def from_file(cls, path: str) -> "ListSeq":
        values, cycle = [], 0
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                s = line.strip()
                if not s:
                    continue
                if s.startswith("#"):
                    words = s[1:].split()
                    if words[:2] == ["tail:", "cycle"] and len(words) == 3:
                        cycle = int(words[2])
                    continue
                values.append(int(s))
        return cls(tuple(values), cycle, path)

    @property
    def horizon(self) -> Optional[int]:
        return None if self.cycle else len(self.values)

    def at(self, n: int) -> int:
        N = len(self.values)
        if n < N:
            return self.values[n]
        if not self.cycle:
            raise HorizonLimit(f"list sequence has no tail rule beyond index {N - 1}")
        start = N - self.cycle
        return self.values[start + (n - start) % self.cycle]

    def __str__(self) -> str:
        if self.path:
            return f"list:{self.path}"
        tail = f";cycle={self.cycle}" if self.cycle else ""
        return "list:[" + ",".join(map(str, self.values)) + tail + "]"


@dataclass(frozen=True)
class Affine:
    s: "SequenceSpec"
    a: int
    b: int

    def at(self, n: int):
        return self.a * self.s.at(n) + self.b

    def __str__(self) -> str:
        return f"affine({self.s},{self.a},{self.b})"


@dataclass(frozen=True)
class Interleave:
    """s on even indices, t on odd ones: u(2k) = s(k), u(2k+1) = t(k)."""

    s: "SequenceSpec"
    t: "SequenceSpec"

    def at(self, n: int):
        k, odd = divmod(n, 2)
        return self.t.at(k) if odd else self.s.at(k)

    def __str__(self) -> str:
        return f"interleave({self.s},{self.t})"


@dataclass(frozen=True)
class Plant:
    """t on the indices in ``where``, s elsewhere."""

    s: "SequenceSpec"
    t: "SequenceSpec"
    where: object

    def at(self, n: int):
        return self.t.at(n) if self.where.contains(n) else self.s.at(n)

    def __str__(self) -> str:
        return f"plant({self.s},{self.t},{self.where})"


@dataclass(frozen=True)
class Vec:
    parts: tuple

    def at(self, n: int) -> IntVector:
        return IntVector(tuple(p.at(n) for p in self.parts))

    def __str__(self) -> str:
        return "vec(" + ",".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class LinComb:
    """sum of coeffs[i] * parts[i](n), an integer sequence."""

    parts: tuple
    coeffs: tuple

    def at(self, n: int) -> int:
        return sum(c * p.at(n) for c, p in zip(self.coeffs, self.parts))

    def __str__(self) -> str:
        return "lincomb(" + ",".join(f"{c}*{p}" for c, p in zip(self.coeffs, self.parts)) + ")"


@dataclass(frozen=True)
class SparseSumSeq:
    """u(n) = (c, e_n) on ``marked`` and (0, e_n) elsewhere, in Z/4 x (Z/2)^(N0)."""

    marked: object
    c: int = 1

    def at(self, n: int) -> SparseSum:
        return SparseSum(self.c if self.marked.contains(n) else 0, frozenset({n}))

    def __str__(self) -> str:
        return f"sparsesum({self.marked},{self.c})"


SequenceSpec = Union[Pow, Fact, Poly, ListSeq, Affine, Interleave, Plant, Vec, LinComb, SparseSumSeq]


def is_integer_valued(u) -> bool:
    if isinstance(u, (Pow, Fact, Poly, ListSeq, LinComb)):
        return True
    if isinstance(u, Affine):
        return is_integer_valued(u.s)
    if isinstance(u, (Interleave, Plant)):
        return is_integer_valued(u.s) and is_integer_valued(u.t)
    return False


def list_horizon(u) -> Optional[int]:
    """Smallest horizon imposed by tail-less list leaves, or None."""
    if isinstance(u, ListSeq):
        return u.horizon
    if isinstance(u, Affine):
        return list_horizon(u.s)
    if isinstance(u, (Interleave, Plant)):
        hs = [h for h in (list_horizon(u.s), list_horizon(u.t)) if h is not None]
        if not hs:
            return None
        return 2 * min(hs) if isinstance(u, Interleave) else min(hs)
    if isinstance(u, (Vec, LinComb)):
        hs = [h for h in map(list_horizon, u.parts) if h is not None]
        return min(hs) if hs else None
    return None
