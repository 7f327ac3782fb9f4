"""Signed sumsets k(.)B, refutation of the T-sequence criterion, neighbourhood stages.

For B = {u(n) : n in an index set} the k-fold signed sumset is
({0} u B u -B) + ... + ({0} u B u -B) with k summands, and 0(.)B = {0}.
Sums are enumerated meet-in-the-middle: the two halves are built without a
window (partial sums may leave it) and only the combined sums are filtered.
"""

from __future__ import annotations

import bisect
import json
import math
from dataclasses import dataclass, field
from typing import Optional

from .convergence.sequences import Affine, Fact, Pow
from .errors import ChainNotAscending, WindowOverflow
from .ideals.descriptors import parse_descriptor
from .groups import FiniteAb, IntVector, SparseSum, is_zero, magnitude, zero_like

DEFAULT_BUDGET = 10 ** 7
SCHEMA_VERSION = 1


# ------------------------------------------------------------------ elements

def element_key(g):
    """Deterministic order: magnitude, then sign (positive first), then coordinates."""
    if isinstance(g, int):
        return (abs(g), g < 0)
    if isinstance(g, IntVector):
        return (g.magnitude(), g.values)
    if isinstance(g, FiniteAb):
        return (0, g.coords)
    return (0, g.head, tuple(sorted(g.tail)))


def encode_element(g):
    if isinstance(g, int):
        return g
    if isinstance(g, IntVector):
        return {"vector": list(g.values)}
    if isinstance(g, FiniteAb):
        return {"coords": list(g.coords), "orders": list(g.orders)}
    return {"head": g.head, "tail": sorted(g.tail), "head_mod": g.head_mod}


def decode_element(doc):
    if isinstance(doc, bool):
        raise ValueError("not a group element")
    if isinstance(doc, int):
        return doc
    if "vector" in doc:
        return IntVector(tuple(doc["vector"]))
    if "orders" in doc:
        return FiniteAb(tuple(doc["orders"]), tuple(doc["coords"]))
    return SparseSum(doc["head"], frozenset(doc["tail"]), doc.get("head_mod", 4))


# -------------------------------------------------------------- index sets

def _allowed(n: int, m: int, exclude) -> bool:
    return n >= m and (exclude is None or not exclude.contains(n))


def _terms(u, H: int, m: int = 0, exclude=None):
    """Signed generators (value, (index, sign)) in canonical order, zero values dropped."""
    out = []
    for n in range(m, H + 1):
        if not _allowed(n, m, exclude):
            continue
        v = u.at(n)
        if is_zero(v):
            continue
        out.append((v, (n, 1)))
        out.append((-v, (n, -1)))
    return out


def truncated_u_I(u, I, H: int) -> frozenset:
    """{0} together with +-u(n) for n <= H outside I."""
    zero = zero_like(u.at(0))
    return frozenset([zero] + [v for v, _ in _terms(u, H, 0, I)])


# ------------------------------------------------------------------- sumsets

def _wkey(terms):
    return (len(terms), terms)


def _fold(gens, depth: int, zero, budget: int) -> dict:
    """Every sum of at most ``depth`` generators, with a shortest, lexicographically least witness."""
    best = {zero: ()}
    frontier = {zero: ()}
    for _ in range(depth):
        nxt = {}
        for g in sorted(frontier, key=element_key):
            w = frontier[g]
            for v, t in gens:
                h = g + v
                cand = tuple(sorted(w + (t,)))
                old = best.get(h)
                if old is not None and _wkey(old) <= _wkey(cand):
                    continue
                prev = nxt.get(h)
                if prev is None or _wkey(cand) < _wkey(prev):
                    nxt[h] = cand
        for h, w in nxt.items():
            best[h] = w
        frontier = nxt
        if len(best) > budget:
            raise WindowOverflow(budget)
    return best


def _cancel(terms):
    """Drop +u_n, -u_n pairs; the sum is unchanged."""
    count = {}
    for n, s in terms:
        count[n] = count.get(n, 0) + s
    out = []
    for n in sorted(count):
        c = count[n]
        out.extend([(n, 1 if c > 0 else -1)] * abs(c))
    return tuple(out)


def _combine(left: dict, right: dict, W: Optional[int], budget: int) -> dict:
    """{a + c : within W} with the shortest witness among those met."""
    result = {}
    if W is not None and all(isinstance(a, int) for a in left) and all(isinstance(c, int) for c in right):
        rs = sorted(right)
        for a in sorted(left, key=element_key):
            lo = bisect.bisect_left(rs, -W - a)
            hi = bisect.bisect_right(rs, W - a)
            for c in rs[lo:hi]:
                _keep(result, a + c, _cancel(tuple(sorted(left[a] + right[c]))))
            if len(result) > budget:
                raise WindowOverflow(budget)
        return result
    if len(left) * len(right) > budget:
        raise WindowOverflow(budget)
    for a in sorted(left, key=element_key):
        for c in sorted(right, key=element_key):
            g = a + c
            if W is None or magnitude(g) <= W:
                _keep(result, g, _cancel(tuple(sorted(left[a] + right[c]))))
    return result


def _keep(result: dict, g, w) -> None:
    old = result.get(g)
    if old is None or _wkey(w) < _wkey(old):
        result[g] = w


@dataclass(frozen=True)
class SumsetResult:
    elements: frozenset
    k: int
    index: str
    H: int
    W: int
    complete: bool
    witnesses: dict = field(compare=False, repr=False, hash=False)

    def __contains__(self, g) -> bool:
        return g in self.elements

    def sorted(self) -> list:
        return sorted(self.elements, key=element_key)


def escape_floor(u, k: int, H: int) -> Optional[int]:
    """Lower bound on |sum| for <= k signed terms that use some index > H, if certified."""
    if isinstance(u, Pow):
        c = abs(u.c)
        if c < 2 or c - k + 1 < 1:
            return None
        return c ** H * (c - k + 1)
    if isinstance(u, Fact):
        if H + 2 - k < 1:
            return None
        return math.factorial(H) * (H + 2 - k)
    if isinstance(u, Affine) and u.a:
        inner = escape_floor(u.s, k, H)
        return None if inner is None else abs(u.a) * inner - k * abs(u.b)
    return None


def sumset(u, k: int, m: int = 0, H: int = 20, W: int = 1000, exclude=None,
           budget: int = DEFAULT_BUDGET) -> SumsetResult:
    """k(.)B within the window, B = {u(n) : m <= n <= H, n not in exclude}."""
    if k < 0:
        raise ValueError("fold count must be nonnegative")
    zero = zero_like(u.at(0))
    gens = _terms(u, H, m, exclude)
    index = f"tail:{m}" + (f" minus {exclude}" if exclude is not None else "")
    if k == 0:
        return SumsetResult(frozenset([zero]), 0, index, H, W, True, {zero: ()})
    left = _fold(gens, (k + 1) // 2, zero, budget)
    right = left if k % 2 == 0 else _fold(gens, k // 2, zero, budget)
    window = W if isinstance(zero, (int, IntVector)) else None
    found = _combine(left, right, window, budget)
    floor = escape_floor(u, k, H)
    complete = floor is not None and floor > W
    return SumsetResult(frozenset(found), k, index, H, W, complete, found)


# ------------------------------------------------------------- refutation

@dataclass(frozen=True)
class RefutationCertificate:
    """g != 0 lies in k(.)u_m for every m <= M, one explicit witness per m."""

    g: object
    k: int
    M: int
    witnesses: tuple  # of (m, ((index, sign), ...))
    exclude: Optional[str] = None
    seq: Optional[str] = None

    def to_dict(self) -> dict:
        doc = {"schema_version": SCHEMA_VERSION, "g": encode_element(self.g), "k": self.k, "M": self.M,
               "witnesses": [{"m": m, "terms": [{"index": i, "sign": s} for i, s in terms]}
                             for m, terms in self.witnesses]}
        if self.exclude is not None:
            doc["exclude"] = self.exclude
        if self.seq is not None:
            doc["seq"] = self.seq
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, doc: dict) -> "RefutationCertificate":
        wits = tuple((int(w["m"]), tuple((int(t["index"]), int(t["sign"])) for t in w["terms"]))
                     for w in doc["witnesses"])
        return cls(decode_element(doc["g"]), int(doc["k"]), int(doc["M"]), wits,
                   doc.get("exclude"), doc.get("seq"))

    @classmethod
    def from_json(cls, text: str) -> "RefutationCertificate":
        return cls.from_dict(json.loads(text))


def _witness_for(u, g, k: int, m: int, H: int, exclude, budget: int):
    """Least witness of g with <= k terms, indices in [m, H] off exclude."""
    gens = _terms(u, H, m, exclude)
    zero = zero_like(g)
    left = _fold(gens, (k + 1) // 2, zero, budget)
    right = left if k % 2 == 0 else _fold(gens, k // 2, zero, budget)
    best = None
    for a, wa in left.items():
        wc = right.get(g - a)
        if wc is not None:
            w = _cancel(tuple(sorted(wa + wc)))
            if best is None or _wkey(w) < _wkey(best):
                best = w
    return best


def t_refute(u, kmax: int, M: int, H: Optional[int] = None, W: int = 1000, exclude=None,
             budget: int = DEFAULT_BUDGET) -> Optional[RefutationCertificate]:
    """Find g != 0 and k <= kmax with g in k(.)u_m for all m <= M, or None (horizon-relative).

    The tails shrink with m, so candidates come from the smallest one, m = M.
    """
    H = 2 * M + 2 if H is None else H
    if H < M:
        raise ValueError("horizon must reach the tail index M")
    best = {}
    for k in range(1, kmax + 1):
        for g in sumset(u, k, M, H, W, exclude, budget).elements:
            if not is_zero(g) and g not in best:
                best[g] = k
    if not best:
        return None
    g = min(best, key=lambda x: (element_key(x), best[x]))
    k = best[g]
    witnesses = []
    for m in range(M + 1):
        w = _witness_for(u, g, k, m, H, exclude, budget)
        witnesses.append((m, w))
    return RefutationCertificate(g, k, M, tuple(witnesses),
                                 None if exclude is None else str(exclude), str(u))


def verify_refutation(cert: RefutationCertificate, u, exclude=None) -> bool:
    """Re-evaluate every witness from scratch."""
    try:
        if exclude is None and cert.exclude:
            exclude = parse_descriptor(cert.exclude)
        if cert.k < 1 or cert.M < 0 or is_zero(cert.g):
            return False
        if sorted(m for m, _ in cert.witnesses) != list(range(cert.M + 1)):
            return False
        for m, terms in cert.witnesses:
            if len(terms) > cert.k:
                return False
            total = zero_like(cert.g)
            for index, sign in terms:
                if index < m or sign not in (1, -1):
                    return False
                if exclude is not None and exclude.contains(index):
                    return False
                total = total + u.at(index) if sign == 1 else total - u.at(index)
            if total != cert.g:
                return False
        return True
    except Exception:
        return False


# --------------------------------------------------------- neighbourhoods

def check_ascending(chain, H: int) -> None:
    for i, (a, b) in enumerate(zip(chain, chain[1:])):
        for n in range(H + 1):
            if a.contains(n) and not b.contains(n):
                raise ChainNotAscending(f"{n} lies in link {i} but not in link {i + 1}")


def _factor_sums(factors, zero, budget: int) -> dict:
    acc = {zero: ()}
    for F in factors:
        nxt = {}
        for a in sorted(acc, key=element_key):
            for v, t in F:
                _keep(nxt, a + v, acc[a] + ((t,) if t else ()))
        acc = nxt
        if len(acc) > budget:
            raise WindowOverflow(budget)
    return acc


def nbhd_stage(u, chain, H: int = 20, W: int = 1000, budget: int = DEFAULT_BUDGET) -> frozenset:
    """(u_{I_1} + ... + u_{I_N}) within the window, each factor truncated at H."""
    chain = list(chain)
    check_ascending(chain, H)
    zero = zero_like(u.at(0))
    if not chain:
        return frozenset([zero])
    factors = [[(zero, None)] + _terms(u, H, 0, I) for I in chain]
    half = len(factors) // 2
    left = _factor_sums(factors[:half], zero, budget)
    right = _factor_sums(factors[half:], zero, budget)
    window = W if isinstance(zero, (int, IntVector)) else None
    return frozenset(_combine(left, right, window, budget))


def cover_index(g, u, I=None, max_m: int = 8, H: int = 20, W: int = 1000,
                budget: int = DEFAULT_BUDGET) -> Optional[int]:
    """Least m with g in m(.)u_I, searching partial sums of magnitude <= W.

    Any sum of integers bounded by T that equals g can be ordered so every
    partial sum stays within |g| + T of 0, so the answer is exact for the
    truncated set once W >= |g| + max |u(n)|.
    """
    if is_zero(g):
        return 0
    gens = [v for v, _ in _terms(u, H, 0, I)]
    bounded = isinstance(g, (int, IntVector))
    seen = {zero_like(g)}
    frontier = [zero_like(g)]
    for m in range(1, max_m + 1):
        nxt = []
        for a in frontier:
            for v in gens:
                b = a + v
                if b in seen or (bounded and magnitude(b) > W):
                    continue
                if b == g:
                    return m
                seen.add(b)
                nxt.append(b)
        if len(seen) > budget:
            raise WindowOverflow(budget)
        frontier = nxt
    return None
