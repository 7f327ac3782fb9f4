"""Residues u(n) mod q as eventually periodic words, possibly split along a descriptor."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import CycleNotDetected, UnsupportedSequence
from ..ideals.descriptors import EVENS, Finite, complement, dilate_half, has_sparse, inter, leaves
from ..ideals import analysis
from .cache import CACHE
from .sequences import Affine, Fact, Interleave, LinComb, ListSeq, Plant, Poly, Pow

DEFAULT_HORIZON = 1 << 20


@dataclass(frozen=True)
class ResidueCycle:
    """u(n) mod q: ``preperiod`` first, then ``period`` repeated, both canonical."""

    modulus: int
    preperiod: tuple
    period: tuple

    def __post_init__(self):
        pre, per = canonical_cycle(self.preperiod, self.period)
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    def at(self, n: int) -> int:
        p = len(self.preperiod)
        return self.preperiod[n] if n < p else self.period[(n - p) % len(self.period)]

    def map(self, f) -> "ResidueCycle":
        return ResidueCycle(self.modulus, tuple(map(f, self.preperiod)), tuple(map(f, self.period)))

    def residues(self) -> set:
        return set(self.preperiod) | set(self.period)


@dataclass(frozen=True)
class Split:
    """Residues follow ``inside`` on the indices in ``where`` and ``outside`` elsewhere."""

    where: object
    inside: object
    outside: object

    def at(self, n: int) -> int:
        return (self.inside if self.where.contains(n) else self.outside).at(n)

    def map(self, f) -> "Split":
        return Split(self.where, self.inside.map(f), self.outside.map(f))

    def residues(self) -> set:
        return self.inside.residues() | self.outside.residues()


def canonical_cycle(pre, per) -> tuple[tuple, tuple]:
    pre, per = tuple(pre), tuple(per)
    if not per:
        raise ValueError("empty period")
    n = len(per)
    for d in range(1, n + 1):
        if n % d == 0 and per[:d] * (n // d) == per:
            per = per[:d]
            break
    while pre and pre[-1] == per[-1]:
        pre, per = pre[:-1], (per[-1],) + per[:-1]
    return pre, per


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _zip_cycles(a: ResidueCycle, b: ResidueCycle, f) -> ResidueCycle:
    start = max(len(a.preperiod), len(b.preperiod))
    L = _lcm(len(a.period), len(b.period))
    vals = [f(a.at(n), b.at(n)) for n in range(start + L)]
    return ResidueCycle(a.modulus, tuple(vals[:start]), tuple(vals[start:]))


def combine(a, b, f):
    """Pointwise f of two residue trees, grafting splits."""
    if isinstance(a, Split):
        return Split(a.where, combine(a.inside, b, f), combine(a.outside, b, f))
    if isinstance(b, Split):
        return Split(b.where, combine(a, b.inside, f), combine(a, b.outside, f))
    return _zip_cycles(a, b, f)


def _interleave_cycles(a: ResidueCycle, b: ResidueCycle) -> ResidueCycle:
    start = 2 * max(len(a.preperiod), len(b.preperiod))
    L = 2 * _lcm(len(a.period), len(b.period))
    vals = [(b.at(n // 2) if n % 2 else a.at(n // 2)) for n in range(start + L)]
    return ResidueCycle(a.modulus, tuple(vals[:start]), tuple(vals[start:]))


ODDS = complement(EVENS)


def _interleave(a, b):
    if isinstance(a, Split):
        where = inter(_dilate(a.where), EVENS)
        return Split(where, _interleave(a.inside, b), _interleave(a.outside, b))
    if isinstance(b, Split):
        where = inter(_dilate(b.where), ODDS)
        return Split(where, _interleave(a, b.inside), _interleave(a, b.outside))
    return _interleave_cycles(a, b)


def _dilate(d):
    if has_sparse(d):
        raise UnsupportedSequence("interleaving a sequence planted along a sparse family")
    return dilate_half(d)


# ------------------------------------------------------------------ leaves

def _pow_cycle(c: int, q: int, horizon: int) -> ResidueCycle:
    seen, vals = {}, []
    v = 1 % q
    while v not in seen:
        if len(vals) > horizon:
            raise CycleNotDetected(horizon, f"pow:{c} mod {q}")
        seen[v] = len(vals)
        vals.append(v)
        v = v * c % q
    s = seen[v]
    return ResidueCycle(q, tuple(vals[:s]), tuple(vals[s:]))


def _fact_cycle(q: int, horizon: int) -> ResidueCycle:
    vals, f, n = [], 1 % q, 0
    while f:
        if n > horizon:
            raise CycleNotDetected(horizon, f"fact mod {q}")
        vals.append(f)
        n += 1
        f = f * n % q
    return ResidueCycle(q, tuple(vals), (0,))


def _poly_cycle(coeffs, q: int) -> ResidueCycle:
    per = []
    for n in range(q):
        v = 0
        for a in coeffs:
            v = (v * n + a) % q
        per.append(v)
    return ResidueCycle(q, (), tuple(per))


def _list_cycle(u: ListSeq, q: int) -> ResidueCycle:
    if not u.cycle:
        raise CycleNotDetected(len(u.values), f"{u} has no tail rule")
    vals = [v % q for v in u.values]
    cut = len(vals) - u.cycle
    return ResidueCycle(q, tuple(vals[:cut]), tuple(vals[cut:]))


def residue_tree(u, q: int, horizon: int = DEFAULT_HORIZON):
    if q < 1:
        raise ValueError("modulus must be positive")
    if isinstance(u, (Pow, Fact, Poly)):
        hit = CACHE.get(u, q)
        if hit is not None:
            return ResidueCycle(q, *hit)
        if isinstance(u, Pow):
            cyc = _pow_cycle(u.c, q, horizon)
        elif isinstance(u, Fact):
            cyc = _fact_cycle(q, horizon)
        else:
            cyc = _poly_cycle(u.coeffs, q)
        CACHE.put(u, q, cyc.preperiod, cyc.period)
        return cyc
    if isinstance(u, ListSeq):
        return _list_cycle(u, q)
    if isinstance(u, Affine):
        return residue_tree(u.s, q, horizon).map(lambda r: (u.a * r + u.b) % q)
    if isinstance(u, Interleave):
        return _interleave(residue_tree(u.s, q, horizon), residue_tree(u.t, q, horizon))
    if isinstance(u, Plant):
        return Split(u.where, residue_tree(u.t, q, horizon), residue_tree(u.s, q, horizon))
    if isinstance(u, LinComb):
        tree = ResidueCycle(q, (), (0,))
        for c, p in zip(u.coeffs, u.parts):
            tree = combine(tree, residue_tree(p, q, horizon), lambda x, y, c=c: (x + c * y) % q)
        return tree
    raise UnsupportedSequence(f"{u} is not an integer sequence with residue structure")


def _flatten(tree, q: int) -> ResidueCycle:
    if isinstance(tree, ResidueCycle):
        return tree
    if has_sparse(tree.where):
        raise UnsupportedSequence("residues along a sparse family are not eventually periodic")
    a, b = _flatten(tree.inside, q), _flatten(tree.outside, q)
    pp = analysis.periodic_part(tree.where)
    start = max(len(pp.preamble), len(a.preperiod), len(b.preperiod))
    for leaf in leaves(tree.where):
        if isinstance(leaf, Finite) and leaf.elements:
            start = max(start, leaf.elements[-1] + 1)
    L = _lcm(len(pp.period), _lcm(len(a.period), len(b.period)))
    vals = [(a if tree.where.contains(n) else b).at(n) for n in range(start + L)]
    return ResidueCycle(q, tuple(vals[:start]), tuple(vals[start:]))


def residue_analysis(u, q: int, horizon: int = DEFAULT_HORIZON) -> ResidueCycle:
    """Preperiod and minimal period of u(n) mod q."""
    if q < 2:
        raise ValueError("modulus must be at least 2")
    return _flatten(residue_tree(u, q, horizon), q)
