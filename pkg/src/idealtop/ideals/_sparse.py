"""Eventual behaviour of one leaf along the points of a sparse family.

For a sparse leaf S with points s(0), s(1), ... and another leaf T, the
indicator i -> [s(i) in T] is classified as

* ``periodic``: equal to ``pattern[i % len(pattern)]`` for all i >= ``i0``
  (``i0`` is None when only existence of such a start is known);
* ``sparse``: true only on a density-zero set of indices i, and every such
  point also belongs to a family whose own relation to S is periodic;
* ``unknown``: no exact statement is available.

Facts used (all for a fixed nonzero shift d unless stated):
i^2 + d = j^2 and i! + d = j! have finitely many, explicitly bounded
solutions; r^x + d = r^y is bounded by |d|(|d|+1); c^x + d = e^y for
multiplicatively independent bases is finite (Pillai); c^x + d = y^2 is
finite (Siegel, via x mod 3); c^x = j! + d is bounded through the p-adic
valuation of d; j! is a perfect square only for j <= 1.  The equation
i! + d = y^2 is Brocard-type and open, hence ``unknown``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .descriptors import EvPeriodic, Finite, Sparse


@dataclass(frozen=True)
class Relation:
    kind: str
    pattern: tuple = (False,)
    i0: Optional[int] = 0


FALSE_FOREVER = Relation("periodic", (False,), 0)


def _primes():
    yield 2
    p = 3
    while True:
        if all(p % q for q in range(3, math.isqrt(p) + 1, 2)):
            yield p
        p += 2


def smallest_prime_factor(c: int) -> int:
    for p in _primes():
        if c % p == 0:
            return p


def smallest_prime_not_dividing(c: int) -> int:
    for p in _primes():
        if c % p:
            return p


def valuation(p: int, n: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def primitive_root(c: int) -> tuple[int, int]:
    """(r, e) with c = r**e and e maximal."""
    for e in range(c.bit_length(), 1, -1):
        r = round(c ** (1.0 / e))
        for cand in (r - 1, r, r + 1):
            if cand >= 2 and cand ** e == c:
                return cand, e
    return c, 1


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def kempner(w: int) -> int:
    """Least i with w | i!."""
    i, f = 0, 1
    while f % w:
        i += 1
        f = f * i % w if w > 1 else 0
    return i


def geom_fact_bound(c: int, k: int) -> int:
    """Upper bound for c^x over all solutions of c^x = j! + k."""
    if k == 0:
        p0 = smallest_prime_not_dividing(c)
        return math.factorial(p0 - 1)
    p = smallest_prime_factor(c)
    t = valuation(p, abs(k))
    j1 = 0
    while valuation(p, math.factorial(j1)) <= t:
        j1 += 1
    return max(c ** t, math.factorial(max(j1 - 1, 0)) + abs(k))


def _mod_pattern(S: Sparse, w: int):
    """(start, period, residue_fn) so that raw(i) mod w is periodic for i >= start."""
    if S.kind == "squares":
        return 0, w, lambda i: (i * i) % w
    if S.kind == "factpos":
        start = kempner(w)
        return start, 1, lambda i: math.factorial(i) % w if i < start else 0
    seen = {}
    i, v = 0, 1 % w
    while v not in seen:
        seen[v] = i
        i += 1
        v = v * S.base % w
    start = seen[v]
    return start, i - start, lambda j: pow(S.base, j, w)


def relation(S: Sparse, T) -> Relation:
    if T == S:
        return Relation("periodic", (True,), 0)
    if isinstance(T, Finite):
        if not T.elements:
            return FALSE_FOREVER
        return Relation("periodic", (False,), S.first_index_above(T.elements[-1]))
    if isinstance(T, EvPeriodic):
        return _periodic_relation(S, T)
    return _sparse_relation(S, T)


def _periodic_relation(S: Sparse, T: EvPeriodic) -> Relation:
    p, w = len(T.preamble), len(T.period)
    start, lam, res = _mod_pattern(S, w)
    i0 = max(start, S.first_index_above(p - 1))
    pattern = [False] * lam
    for i in range(i0, i0 + lam):
        pattern[i % lam] = T.period[(res(i) + S.offset - p) % w] == "1"
    return Relation("periodic", tuple(pattern), i0)


def _sparse_relation(S: Sparse, T: Sparse) -> Relation:
    d = S.offset - T.offset
    ks, kt = S.kind, T.kind
    if ks == kt == "squares":
        return Relation("periodic", (False,), abs(d) + 1)
    if ks == kt == "factpos":
        i = 0
        while math.factorial(i) <= 2 * abs(d):
            i += 1
        return Relation("periodic", (False,), i)
    if ks == kt == "geom":
        rc, ac = primitive_root(S.base)
        re_, ae = primitive_root(T.base)
        dependent = rc == re_
        if d == 0:
            if dependent:
                L = ae // math.gcd(ac, ae)
                return Relation("periodic", tuple((ac * r) % ae == 0 for r in range(L)), 0)
            return Relation("periodic", (False,), 1)
        if dependent:
            return Relation("periodic", (False,), S.first_index_above(abs(d) * (abs(d) + 1) + S.offset))
        return Relation("periodic", (False,), None)
    if ks == "squares" and kt == "geom":
        return Relation("sparse") if d == 0 else Relation("periodic", (False,), None)
    if ks == "geom" and kt == "squares":
        if d == 0:
            return Relation("periodic", (True,) if is_square(S.base) else (True, False), 0)
        return Relation("periodic", (False,), None)
    if ks == "squares" and kt == "factpos":
        return Relation("periodic", (False,), 2) if d == 0 else Relation("sparse")
    if ks == "factpos" and kt == "squares":
        return Relation("periodic", (False,), 2) if d == 0 else Relation("unknown")
    # geometric positions against factorial positions, either way round
    g, f = (S, T) if ks == "geom" else (T, S)
    bound = geom_fact_bound(g.base, f.offset - g.offset) + g.offset
    return Relation("periodic", (False,), S.first_index_above(bound))
