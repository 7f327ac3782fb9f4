"""Finitely describable subsets of N0.

Four closed classes: explicit finite sets, eventually periodic bit patterns,
three sparse families (shifted squares, shifted powers of a base, shifted
factorials) and boolean combinations of these.  Membership and counting are
exact for all of them.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Union

from .._scan import Scanner
from ..errors import ParseError

MAX_COMBO_LEAVES = 8


@dataclass(frozen=True)
class Finite:
    elements: tuple[int, ...] = ()

    def __post_init__(self):
        els = tuple(int(e) for e in self.elements)
        if any(e < 0 for e in els) or any(a >= b for a, b in zip(els, els[1:])):
            raise ValueError("finite descriptors need strictly increasing naturals")
        object.__setattr__(self, "elements", els)

    @classmethod
    def of(cls, items) -> "Finite":
        return cls(tuple(sorted(set(int(i) for i in items))))

    def contains(self, n: int) -> bool:
        i = bisect.bisect_left(self.elements, n)
        return i < len(self.elements) and self.elements[i] == n

    def count_upto(self, n: int) -> int:
        return bisect.bisect_right(self.elements, n)

    def __str__(self) -> str:
        return "finite:{" + ",".join(map(str, self.elements)) + "}"


def _minimal_period(word: str) -> str:
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word[:d] * (n // d) == word:
            return word[:d]
    return word


@dataclass(frozen=True)
class EvPeriodic:
    """Bits ``preamble`` followed by ``period`` repeated forever (canonical form)."""

    preamble: str
    period: str

    def __post_init__(self):
        if not self.period or set(self.preamble + self.period) - {"0", "1"}:
            raise ValueError("eventually periodic descriptors need a nonempty 0/1 period")
        pre, per = self.preamble, _minimal_period(self.period)
        while pre and pre[-1] == per[-1]:
            pre, per = pre[:-1], per[-1] + per[:-1]
        object.__setattr__(self, "preamble", pre)
        object.__setattr__(self, "period", per)

    @classmethod
    def from_bits(cls, bits, start: int, period_len: int) -> "EvPeriodic":
        """Pattern whose first ``start`` bits are a preamble, then a repeating block."""
        s = "".join("1" if b else "0" for b in bits)
        return cls(s[:start], s[start:start + period_len])

    def contains(self, n: int) -> bool:
        p = len(self.preamble)
        if n < p:
            return self.preamble[n] == "1"
        return self.period[(n - p) % len(self.period)] == "1"

    def count_upto(self, n: int) -> int:
        if n < 0:
            return 0
        p = len(self.preamble)
        if n < p:
            return self.preamble[: n + 1].count("1")
        full, rest = divmod(n - p + 1, len(self.period))
        return self.preamble.count("1") + full * self.period.count("1") + self.period[:rest].count("1")

    def __str__(self) -> str:
        return f"period:{self.preamble}/{self.period}"


SPARSE_KINDS = ("squares", "geom", "factpos")


@dataclass(frozen=True)
class Sparse:
    """{s(i) + offset : i >= 0} for s(i) = i^2, base^i or i!."""

    kind: str
    base: int = 0
    offset: int = 0

    def __post_init__(self):
        if self.kind not in SPARSE_KINDS:
            raise ValueError(f"unknown sparse family {self.kind!r}")
        if self.kind == "geom" and self.base < 2:
            raise ValueError("geometric positions need base >= 2")
        if self.kind != "geom" and self.base:
            raise ValueError("only geometric positions take a base")
        if self.offset < 0:
            raise ValueError("offset must be a natural number")

    def raw(self, i: int) -> int:
        if self.kind == "squares":
            return i * i
        if self.kind == "geom":
            return self.base ** i
        return math.factorial(i)

    def term(self, i: int) -> int:
        return self.raw(i) + self.offset

    def first_index_above(self, n: int) -> int:
        """Least i with term(i) > n."""
        if self.kind == "squares":
            m = n - self.offset
            return 0 if m < 0 else math.isqrt(m) + 1
        i = 0
        while self.term(i) <= n:
            i += 1
        return i

    def contains_raw(self, m: int) -> bool:
        if m < 0:
            return False
        if self.kind == "squares":
            r = math.isqrt(m)
            return r * r == m
        if self.kind == "geom":
            if m < 1:
                return False
            while m % self.base == 0:
                m //= self.base
            return m == 1
        f, i = 1, 1
        while f < m:
            i += 1
            f *= i
        return f == m

    def contains(self, n: int) -> bool:
        return self.contains_raw(n - self.offset)

    def points_upto(self, n: int) -> Iterator[int]:
        """Distinct members <= n in increasing order."""
        last = None
        i = 0
        while True:
            t = self.term(i)
            if t > n:
                return
            if t != last:
                yield t
                last = t
            i += 1

    def count_upto(self, n: int) -> int:
        m = n - self.offset
        if m < 0:
            return 0
        if self.kind == "squares":
            return math.isqrt(m) + 1
        if self.kind == "geom":
            if m < 1:
                return 0
            c, p = 0, 1
            while p <= m:
                c += 1
                p *= self.base
            return c
        # 0! = 1! so the value 1 is counted once
        if m < 1:
            return 0
        c, f, i = 1, 1, 1
        while True:
            i += 1
            f *= i
            if f > m:
                return c
            c += 1

    def __str__(self) -> str:
        head = f"geom:{self.base}" if self.kind == "geom" else self.kind
        return f"{head}+{self.offset}" if self.offset else head


COMBO_OPS = ("union", "inter", "diff")


@dataclass(frozen=True)
class Combo:
    op: str
    left: "SetDescriptor"
    right: "SetDescriptor"

    def __post_init__(self):
        if self.op not in COMBO_OPS:
            raise ValueError(f"unknown connective {self.op!r}")

    def contains(self, n: int) -> bool:
        a = self.left.contains(n)
        if self.op == "union":
            return a or self.right.contains(n)
        if self.op == "inter":
            return a and self.right.contains(n)
        return a and not self.right.contains(n)

    @cached_property
    def leaves(self) -> tuple:
        return _leaves(self)

    def count_upto(self, n: int) -> int:
        from .analysis import combo_count

        return combo_count(self, n)

    def __str__(self) -> str:
        return f"{self.op}({self.left},{self.right})"


SetDescriptor = Union[Finite, EvPeriodic, Sparse, Combo]
Leaf = Union[Finite, EvPeriodic, Sparse]

EMPTY = Finite(())
ALL = EvPeriodic("", "1")
EVENS = EvPeriodic("", "10")


def _leaves(d) -> tuple:
    if isinstance(d, Combo):
        out = []
        for x in _leaves(d.left) + _leaves(d.right):
            if x not in out:
                out.append(x)
        return tuple(out)
    return (d,)


def leaves(d: SetDescriptor) -> tuple:
    return d.leaves if isinstance(d, Combo) else (d,)


def member(A: SetDescriptor, n: int) -> bool:
    return n >= 0 and A.contains(n)


def count(A: SetDescriptor, n: int) -> int:
    """|A intersect [0, n]|, exact."""
    if n < 0:
        return 0
    return A.count_upto(n)


def union(a, b) -> Combo:
    return Combo("union", a, b)


def inter(a, b) -> Combo:
    return Combo("inter", a, b)


def diff(a, b) -> Combo:
    return Combo("diff", a, b)


def complement(a) -> Combo:
    return Combo("diff", ALL, a)


def dilate_half(d: SetDescriptor) -> SetDescriptor:
    """{n : n // 2 in d}, for descriptors without sparse leaves."""
    if isinstance(d, Finite):
        return Finite.of(x for e in d.elements for x in (2 * e, 2 * e + 1))
    if isinstance(d, EvPeriodic):
        dbl = lambda s: "".join(c + c for c in s)
        return EvPeriodic(dbl(d.preamble), dbl(d.period))
    if isinstance(d, Combo):
        return Combo(d.op, dilate_half(d.left), dilate_half(d.right))
    raise ValueError(f"cannot dilate the sparse descriptor {d}")


def has_sparse(d: SetDescriptor) -> bool:
    return any(isinstance(x, Sparse) for x in leaves(d))


# -------------------------------------------------------------------- grammar

def _parse(sc: Scanner) -> SetDescriptor:
    for op in COMBO_OPS:
        if sc.accept(op + "("):
            a = _parse(sc)
            sc.expect(",")
            b = _parse(sc)
            sc.expect(")")
            return Combo(op, a, b)
    if sc.accept("finite:{"):
        items = []
        if not sc.accept("}"):
            items.append(sc.integer(signed=False))
            while sc.accept(","):
                items.append(sc.integer(signed=False))
            sc.expect("}")
        return Finite.of(items)
    if sc.accept("period:"):
        pre = sc.bits()
        sc.expect("/")
        start = sc.pos
        word = sc.bits()
        if not word:
            sc.pos = start
            sc.fail(["0", "1"])
        return EvPeriodic(pre, word)
    if sc.accept("squares"):
        return Sparse("squares", 0, _offset(sc))
    if sc.accept("factpos"):
        return Sparse("factpos", 0, _offset(sc))
    if sc.accept("geom:"):
        start = sc.pos
        c = sc.integer(signed=False)
        if c < 2:
            sc.pos = start
            sc.fail(["base >= 2"])
        return Sparse("geom", c, _offset(sc))
    sc.fail(["finite:{", "period:", "squares", "geom:", "factpos"] + [op + "(" for op in COMBO_OPS])


def _offset(sc: Scanner) -> int:
    return sc.integer(signed=False) if sc.accept("+") else 0


def parse_descriptor_at(sc: Scanner) -> SetDescriptor:
    start = sc.pos
    d = _parse(sc)
    if isinstance(d, Combo) and len(d.leaves) > MAX_COMBO_LEAVES:
        raise ParseError(sc.text, start, [f"at most {MAX_COMBO_LEAVES} leaves"])
    return d


def parse_descriptor(text: str) -> SetDescriptor:
    sc = Scanner(text.strip())
    d = parse_descriptor_at(sc)
    sc.end()
    return d
