"""Exact arithmetic for the circle group T = Q/Z and the supported abelian groups.

The integer group is represented by plain Python ``int`` (arbitrary precision);
the other variants are frozen dataclasses with canonical coordinates, so
structural equality is group equality.
"""

from __future__ import annotations

import enum
import hashlib
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .errors import ParseError, ShapeMismatch, ZeroDenominator


class Outcome(enum.Enum):
    IN = "In"
    OUT = "Out"
    UNDECIDED = "Undecided"

    def __str__(self) -> str:
        return self.value


# --------------------------------------------------------------------- circle

@dataclass(frozen=True, order=True)
class CirclePoint:
    """Exact point p/q of Q/Z, reduced, with 0 <= p < q."""

    numerator: int
    denominator: int = 1

    def __post_init__(self):
        p, q = self.numerator, self.denominator
        if q <= 0 or not 0 <= p < q or math.gcd(p, q) != 1:
            raise ValueError(f"{p}/{q} is not a reduced representative in [0,1)")

    @classmethod
    def of(cls, value) -> "CirclePoint":
        f = Fraction(value)
        return normalize_circle(f.numerator, f.denominator)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    @property
    def order(self) -> int:
        return self.denominator

    def __add__(self, other: "CirclePoint") -> "CirclePoint":
        return CirclePoint.of(self.fraction + other.fraction)

    def __neg__(self) -> "CirclePoint":
        return normalize_circle(-self.numerator, self.denominator)

    def __sub__(self, other: "CirclePoint") -> "CirclePoint":
        return self + (-other)

    def __rmul__(self, n: int) -> "CirclePoint":
        return normalize_circle(n * self.numerator, self.denominator)

    __mul__ = __rmul__

    def __str__(self) -> str:
        if self.numerator == 0:
            return "0"
        return f"{self.numerator}/{self.denominator}"


@dataclass(frozen=True)
class NumericCirclePoint:
    """Approximate point of T: the true value lies within ``eps`` of ``value``."""

    value: Fraction
    eps: Fraction

    def __post_init__(self):
        if self.eps <= 0:
            raise ValueError("numeric circle points need eps > 0")
        object.__setattr__(self, "value", Fraction(self.value) % 1)
        object.__setattr__(self, "eps", Fraction(self.eps))

    def __rmul__(self, n: int) -> "NumericCirclePoint":
        return NumericCirclePoint(n * self.value, max(abs(n), 1) * self.eps)

    __mul__ = __rmul__

    def norm_bounds(self) -> tuple[Fraction, Fraction]:
        if self.eps >= Fraction(1, 2):
            return Fraction(0), Fraction(1, 2)
        c = circle_norm_value(self.value)
        return max(Fraction(0), c - self.eps), min(Fraction(1, 2), c + self.eps)

    def __str__(self) -> str:
        return f"num:{float(self.value)!r}:{float(self.eps)!r}"


def normalize_circle(numerator: int, denominator: int) -> CirclePoint:
    if denominator == 0:
        raise ZeroDenominator("circle point with zero denominator")
    f = Fraction(numerator, denominator) % 1
    return CirclePoint(f.numerator, f.denominator)


def circle_norm_value(v: Fraction) -> Fraction:
    v = v % 1
    return min(v, 1 - v)


def circle_norm(x: CirclePoint) -> Fraction:
    """Distance from x to 0 in T, an exact rational in [0, 1/2]."""
    return circle_norm_value(x.fraction)


def in_Tk(x, k: int):
    """Membership in the closed arc T_k = [-1/(4k), 1/(4k)].

    Exact points give a bool.  Numeric points give an :class:`Outcome`, which
    is UNDECIDED whenever the error interval straddles the boundary.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    bound = Fraction(1, 4 * k)
    if isinstance(x, CirclePoint):
        return circle_norm(x) <= bound
    lo, hi = x.norm_bounds()
    if hi <= bound:
        return Outcome.IN
    if lo > bound:
        return Outcome.OUT
    return Outcome.UNDECIDED


# ------------------------------------------------------------ group elements

@dataclass(frozen=True)
class IntVector:
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))

    def __add__(self, other: "IntVector") -> "IntVector":
        if len(other.values) != len(self.values):
            raise ShapeMismatch("vector dimensions differ")
        return IntVector(tuple(a + b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> "IntVector":
        return IntVector(tuple(-a for a in self.values))

    def __rmul__(self, n: int) -> "IntVector":
        return IntVector(tuple(n * a for a in self.values))

    def magnitude(self) -> int:
        return max((abs(a) for a in self.values), default=0)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.values)) + ")"


@dataclass(frozen=True)
class FiniteAb:
    """Element of Z/n1 x ... x Z/nr with coordinates reduced into [0, ni)."""

    orders: tuple[int, ...]
    coords: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(n) for n in self.orders)
        if not orders or any(n < 2 for n in orders):
            raise ValueError("finite abelian orders must all be >= 2")
        if len(self.coords) != len(orders):
            raise ShapeMismatch("coordinate count does not match the orders")
        object.__setattr__(self, "orders", orders)
        object.__setattr__(self, "coords", tuple(int(c) % n for c, n in zip(self.coords, orders)))

    @classmethod
    def zero(cls, orders) -> "FiniteAb":
        return cls(tuple(orders), (0,) * len(orders))

    def _check(self, other: "FiniteAb") -> None:
        if self.orders != other.orders:
            raise ShapeMismatch(f"shapes {self.orders} and {other.orders} differ")

    def __add__(self, other: "FiniteAb") -> "FiniteAb":
        self._check(other)
        return FiniteAb(self.orders, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "FiniteAb":
        return FiniteAb(self.orders, tuple(-a for a in self.coords))

    def __rmul__(self, n: int) -> "FiniteAb":
        return FiniteAb(self.orders, tuple(n * a for a in self.coords))

    def __str__(self) -> str:
        return ",".join(map(str, self.coords)) + "@" + ",".join(map(str, self.orders))


@dataclass(frozen=True)
class SparseSum:
    """Element of Z/4 x (Z/2)^(N0): a head residue plus the finite support of the tail."""

    head: int = 0
    tail: frozenset = field(default_factory=frozenset)
    head_mod: int = 4

    def __post_init__(self):
        object.__setattr__(self, "head", self.head % self.head_mod)
        object.__setattr__(self, "tail", frozenset(int(i) for i in self.tail))

    def __add__(self, other: "SparseSum") -> "SparseSum":
        if other.head_mod != self.head_mod:
            raise ShapeMismatch("head moduli differ")
        return SparseSum(self.head + other.head, self.tail ^ other.tail, self.head_mod)

    def __neg__(self) -> "SparseSum":
        # every tail coordinate has order 2
        return SparseSum(-self.head, self.tail, self.head_mod)

    def __rmul__(self, n: int) -> "SparseSum":
        return SparseSum(n * self.head, self.tail if n % 2 else frozenset(), self.head_mod)

    def __str__(self) -> str:
        return f"({self.head};{{{','.join(map(str, sorted(self.tail)))}}})"


GroupElement = Union[int, IntVector, FiniteAb, SparseSum]


def zero_like(g: GroupElement) -> GroupElement:
    if isinstance(g, int):
        return 0
    if isinstance(g, IntVector):
        return IntVector((0,) * len(g.values))
    if isinstance(g, FiniteAb):
        return FiniteAb.zero(g.orders)
    return SparseSum(0, frozenset(), g.head_mod)


def is_zero(g: GroupElement) -> bool:
    return g == zero_like(g)


def magnitude(g: GroupElement) -> int:
    """Window norm: |g| for integers, max-norm for vectors, 0 for torsion groups."""
    if isinstance(g, int):
        return abs(g)
    if isinstance(g, IntVector):
        return g.magnitude()
    return 0


def fingerprint(g: GroupElement) -> str:
    kind = type(g).__name__
    return hashlib.sha256(f"{kind}:{g}".encode()).hexdigest()[:16]


def pair_eval(a: FiniteAb, b: FiniteAb) -> CirclePoint:
    """The character chi_a evaluated at b: sum a_i b_i / n_i mod 1."""
    if a.orders != b.orders:
        raise ShapeMismatch(f"shapes {a.orders} and {b.orders} differ")
    total = sum((Fraction(x * y, n) for x, y, n in zip(a.coords, b.coords, a.orders)), Fraction(0))
    return CirclePoint.of(total)


def all_elements(orders):
    """Every element of the finite group with the given orders, in lexicographic order."""
    import itertools

    for coords in itertools.product(*(range(n) for n in orders)):
        yield FiniteAb(tuple(orders), coords)


# -------------------------------------------------------------------- parsing

def parse_point(text: str):
    """Parse ``p/q``, ``0``, a decimal, ``num:<value>:<eps>`` or ``c1,c2@n1,n2``."""
    s = text.strip()
    if not s:
        raise ParseError(text, 0, ["point"])
    if "@" in s:
        left, _, right = s.partition("@")
        try:
            coords = tuple(int(c) for c in left.split(","))
            orders = tuple(int(n) for n in right.split(","))
            return FiniteAb(orders, coords)
        except (ValueError, ShapeMismatch):
            raise ParseError(text, len(left) + 1, ["c1,...@n1,..."]) from None
    if s.startswith("num:"):
        parts = s[4:].split(":")
        try:
            value = Fraction(parts[0])
            eps = Fraction(parts[1]) if len(parts) > 1 else Fraction(1, 10 ** 12)
            return NumericCirclePoint(value, eps)
        except (ValueError, IndexError, ZeroDivisionError):
            raise ParseError(text, 4, ["num:<value>:<eps>"]) from None
    try:
        f = Fraction(s)
    except ZeroDivisionError:
        raise ZeroDenominator(f"zero denominator in {text!r}") from None
    except ValueError:
        raise ParseError(text, 0, ["p/q"]) from None
    return normalize_circle(f.numerator, f.denominator)
