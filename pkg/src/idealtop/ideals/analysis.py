"""Exact decisions on descriptors: density, finiteness, eventual emptiness.

Every descriptor agrees with its *periodic part* (the formula evaluated with
all finite and sparse leaves set to false) outside a density-zero set, which
gives exact densities.  Finiteness is decided by walking along each sparse
family and classifying the other leaves there (see ``_sparse``).
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import Optional

from .descriptors import Combo, EvPeriodic, Finite, Sparse, leaves
from ._sparse import relation

MAX_PERIOD = 1 << 20


def _compile(A):
    """(leaves, evaluator) where evaluator maps a tuple of leaf bits to membership."""
    ls = leaves(A)
    index = {leaf: i for i, leaf in enumerate(ls)}

    def build(d):
        if not isinstance(d, Combo):
            i = index[d]
            return lambda bits: bits[i]
        a, b = build(d.left), build(d.right)
        if d.op == "union":
            return lambda bits: a(bits) or b(bits)
        if d.op == "inter":
            return lambda bits: a(bits) and b(bits)
        return lambda bits: a(bits) and not b(bits)

    return ls, build(A)


@lru_cache(maxsize=4096)
def periodic_part(A) -> EvPeriodic:
    if isinstance(A, EvPeriodic):
        return A
    if isinstance(A, (Finite, Sparse)):
        return EvPeriodic("", "0")
    ls, f = _compile(A)
    per = [x for x in ls if isinstance(x, EvPeriodic)]
    start = max((len(x.preamble) for x in per), default=0)
    L = 1
    for x in per:
        L = L * len(x.period) // math.gcd(L, len(x.period))
    if L > MAX_PERIOD:
        raise ValueError(f"combined period {L} exceeds {MAX_PERIOD}")
    bits = []
    for n in range(start + L):
        bits.append(f(tuple(x.contains(n) if isinstance(x, EvPeriodic) else False for x in ls)))
    return EvPeriodic.from_bits(bits, start, L)


def density(A):
    from fractions import Fraction

    p = periodic_part(A)
    return Fraction(p.period.count("1"), len(p.period))


def combo_count(A, n: int) -> int:
    pp = periodic_part(A)
    total = pp.count_upto(n)
    special = set()
    for leaf in leaves(A):
        if isinstance(leaf, Finite):
            special.update(e for e in leaf.elements if e <= n)
        elif isinstance(leaf, Sparse):
            special.update(leaf.points_upto(n))
    for m in special:
        total += int(A.contains(m)) - int(pp.contains(m))
    return total


def _perspective(A, S: Sparse):
    """Classify each residue class of indices i along S: 'one', 'zero' or 'mixed'.

    Also returns the largest start index among the periodic relations (None if
    some start is only known to exist).
    """
    ls, f = _compile(A)
    rels = [relation(S, leaf) for leaf in ls]
    L = 1
    for r in rels:
        if r.kind == "periodic":
            L = L * len(r.pattern) // math.gcd(L, len(r.pattern))
    unknown = [i for i, r in enumerate(rels) if r.kind == "unknown"]
    i0 = 0
    for r in rels:
        if r.kind == "periodic":
            i0 = None if (i0 is None or r.i0 is None) else max(i0, r.i0)
    classes = []
    for res in range(L):
        base = [r.pattern[res % len(r.pattern)] if r.kind == "periodic" else False for r in rels]
        seen = set()
        for assign in itertools.product((False, True), repeat=len(unknown)):
            bits = list(base)
            for i, v in zip(unknown, assign):
                bits[i] = v
            seen.add(f(tuple(bits)))
        classes.append("one" if seen == {True} else "zero" if seen == {False} else "mixed")
    return classes, i0


def _sparse_leaves(A):
    return [x for x in leaves(A) if isinstance(x, Sparse)]


@lru_cache(maxsize=4096)
def finite_bound(A) -> Optional[int]:
    """N with A inside [0, N] when that follows from the formula alone, else None.

    Past their largest elements the finite leaves are false, so if the formula
    is then false under every assignment of the other leaves, A is bounded.
    """
    if not isinstance(A, Combo):
        return None
    ls, f = _compile(A)
    free = [i for i, leaf in enumerate(ls) if not isinstance(leaf, Finite)]
    bits = [False] * len(ls)
    for choice in itertools.product((False, True), repeat=len(free)):
        for i, b in zip(free, choice):
            bits[i] = b
        if f(tuple(bits)):
            return None
    return max((leaf.elements[-1] for leaf in ls if isinstance(leaf, Finite) and leaf.elements), default=0)


@lru_cache(maxsize=4096)
def is_infinite(A) -> Optional[bool]:
    """True / False, or None when the number theory involved is not settled."""
    if isinstance(A, Finite):
        return False
    if isinstance(A, Sparse):
        return True
    if finite_bound(A) is not None:
        return False
    if density(A) > 0:
        return True
    unsure = False
    for S in _sparse_leaves(A):
        classes, _ = _perspective(A, S)
        if "one" in classes:
            return True
        unsure = unsure or "mixed" in classes
    return None if unsure else False


def eventual_threshold(A) -> Optional[int]:
    """N such that A has no member above N, for a finite A; None if not computable."""
    if is_infinite(A) is not False:
        return None
    bound = finite_bound(A)
    if bound is not None:
        return bound
    pp = periodic_part(A)
    N = len(pp.preamble)
    for leaf in leaves(A):
        if isinstance(leaf, Finite) and leaf.elements:
            N = max(N, leaf.elements[-1])
    for S in _sparse_leaves(A):
        _, i0 = _perspective(A, S)
        if i0 is None:
            return None
        N = max(N, S.term(i0))
    return N


def finite_elements(A) -> Optional[tuple]:
    """Explicit members of a finite A, or None when finiteness or a bound is unknown."""
    if isinstance(A, Finite):
        return A.elements
    N = eventual_threshold(A)
    if N is None:
        return None
    pp = periodic_part(A)
    pts = set(range(min(N, len(pp.preamble)) + 1))
    for leaf in leaves(A):
        if isinstance(leaf, Finite):
            pts.update(e for e in leaf.elements if e <= N)
        elif isinstance(leaf, Sparse):
            pts.update(leaf.points_upto(N))
    # members off the special points follow the periodic part, zero past its preamble
    return tuple(sorted(n for n in pts if A.contains(n)))


def square_family_positive(A) -> bool:
    """Some squares family carries a positive proportion of its points inside A."""
    for S in _sparse_leaves(A):
        if S.kind == "squares" and "one" in _perspective(A, S)[0]:
            return True
    return False


def density_bounds(A):
    """(lower, upper, exact); every built-in descriptor has a natural density."""
    d = density(A)
    return d, d, True


def is_subset(A, B) -> Optional[bool]:
    from .descriptors import diff

    rest = diff(A, B)
    if is_infinite(rest):
        return False
    found = finite_elements(rest)
    if found is None:
        return None
    return not found
