"""Characterized subgroups s_u^I = {x : u(n)x -> 0 along I} of T and of finite groups."""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .convergence.engine import exception_set, iconverges
from .convergence.residues import residue_tree
from .convergence.sequences import LinComb, Vec, is_integer_valued
from .errors import GroupTooLarge
from .groups import CirclePoint, FiniteAb, all_elements, circle_norm_value
from .ideals.catalog import Exhaustive
from .ideals.submeasures import Submeasure
from .verdict import IN, Verdict, jsonable

SCAN_BOUND = 4096
SCHEMA_VERSION = 1


# --------------------------------------------------------------- membership

def _components(u, r: int):
    if isinstance(u, Vec):
        if len(u.parts) != r:
            raise ValueError(f"sequence has {len(u.parts)} coordinates, the group has {r}")
        return u.parts
    # an integer sequence acts diagonally
    return (u,) * r


def pairing_sequence(u, x: FiniteAb):
    """(w, point) with u(n) paired against x equal to w(n) * point in T."""
    L = math.lcm(*x.orders)
    parts = _components(u, len(x.orders))
    coeffs = tuple(c * (L // n) for c, n in zip(x.coords, x.orders))
    return LinComb(tuple(parts), coeffs), CirclePoint(1, L)


def member_s(x, u, I, kmax: int = 8, horizon: Optional[int] = None) -> Verdict:
    kw = {} if horizon is None else {"horizon": horizon}
    if isinstance(x, FiniteAb):
        w, point = pairing_sequence(u, x)
        return iconverges(w, point, I, kmax, **kw)
    return iconverges(u, x, I, kmax, **kw)


# ----------------------------------------------------------------- families

@dataclass(frozen=True)
class CharacterFamily:
    shape: object  # tuple of orders, or "T"
    members: tuple
    provenance: dict
    verdicts: tuple = field(default=(), compare=False, repr=False)

    def to_dict(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "shape": jsonable(self.shape),
                "members": [str(m) for m in self.members], "provenance": jsonable(self.provenance)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _witness_k(v: Verdict):
    return getattr(v.certificate, "k", getattr(v.certificate, "sufficient_k", ""))


def scan_csv(rows) -> str:
    """rows of (point, verdict) as CSV with columns point, verdict, certificate-kind, witness-k."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["point", "verdict", "certificate-kind", "witness-k"])
    for point, v in rows:
        k = _witness_k(v)
        w.writerow([str(point), str(v.outcome), v.certificate.kind, "" if k is None else k])
    return buf.getvalue()


def _judge(args):
    x, u, I = args
    return member_s(x, u, I)


def _map(points, u, I, workers: Optional[int]):
    jobs = [(x, u, I) for x in points]
    if workers and workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_judge, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    return [_judge(j) for j in jobs]


def _generated(members, zero) -> set:
    """Subgroup generated by ``members``, grown one generator at a time."""
    span, gens = {zero}, []
    for m in members:
        if m in span:
            continue
        gens.append(m)
        frontier = list(span)
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = a + g
                    if b not in span:
                        span.add(b)
                        nxt.append(b)
            frontier = nxt
    return span


def check_subgroup(members, zero) -> None:
    s = set(members)
    if zero not in s:
        raise AssertionError("0 missing from the characterized subgroup")
    if any(-m not in s for m in s) or _generated(members, zero) != s:
        raise AssertionError("scan result is not closed under the group operations")


def subgroup_scan_finite(orders, u, I, bound: int = SCAN_BOUND, workers: Optional[int] = None,
                         with_rows: bool = False):
    """Every x in Z/n1 x ... x Z/nr on which u pairs to a sequence converging along I."""
    orders = tuple(orders)
    size = math.prod(orders)
    if size > bound:
        raise GroupTooLarge(f"group of order {size} exceeds the scan bound {bound}")
    points = list(all_elements(orders))
    verdicts = _map(points, u, I, workers)
    members = tuple(x for x, v in zip(points, verdicts) if v.outcome is IN)
    check_subgroup(members, FiniteAb.zero(orders))
    fam = CharacterFamily(orders, members, {"seq": str(u), "ideal": str(I), "bounds": {"group_order": size}},
                          tuple(v for v in verdicts if v.outcome is IN))
    return (fam, list(zip(points, verdicts))) if with_rows else fam


def stern_brocot(Q: int):
    """0 followed by the reduced fractions in (0,1) with denominator <= Q, tree level by level."""
    yield CirclePoint(0, 1)
    level = [((0, 1), (1, 1))]
    while level:
        nxt = []
        for (a, b), (c, d) in level:
            p, q = a + c, b + d
            if q > Q:
                continue
            yield CirclePoint(p, q)
            nxt.append(((a, b), (p, q)))
            nxt.append(((p, q), (c, d)))
        level = nxt


@dataclass(frozen=True)
class TbReport:
    members: CharacterFamily
    evidence: bool
    largest_order: int
    rows: tuple = field(compare=False, repr=False)

    def to_dict(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "evidence": self.evidence,
                "largest_order": self.largest_order, "family": self.members.to_dict()}


def tb_evidence(u, I, Q: int, workers: Optional[int] = None) -> TbReport:
    """Scan p/q with q <= Q.  Members of order above Q/2 count as evidence of an infinite,
    hence dense, subgroup of T; this is evidence only, never a proof."""
    if Q < 2:
        raise ValueError("Q must be at least 2")
    points = list(stern_brocot(Q))
    verdicts = _map(points, u, I, workers)
    members = tuple(x for x, v in zip(points, verdicts) if v.outcome is IN)
    largest = max((x.order for x in members), default=0)
    fam = CharacterFamily("T", members, {"seq": str(u), "ideal": str(I), "bounds": {"qmax": Q}},
                          tuple(v for v in verdicts if v.outcome is IN))
    return TbReport(fam, 2 * largest > Q, largest, tuple(zip(points, verdicts)))


# ------------------------------------------------------------ F_sigma_delta

@dataclass(frozen=True)
class FsdCell:
    """C_{k,m,j,nu}: phi of the violations at scale k in [j+1, nu] is at most 1/m."""

    k: int
    m: int
    j: int
    nu: int
    phi: Submeasure

    def __post_init__(self):
        if self.k < 1 or self.m < 1 or self.j < 0:
            raise ValueError("k, m must be positive and j natural")
        if self.nu < self.j + 1:
            raise ValueError("nu must be at least j + 1")

    @property
    def threshold(self) -> Fraction:
        return Fraction(1, self.m)


class _Values:
    """u(n)x mod 1 for an exact rational x, read off the residue tree when there is one."""

    def __init__(self, u, x: CirclePoint):
        self.u, self.p, self.q = u, x.numerator, x.denominator
        self.tree = residue_tree(u, self.q) if is_integer_valued(u) and self.q > 1 else None

    def norm(self, n: int) -> Fraction:
        r = self.tree.at(n) if self.tree is not None else self.u.at(n) % self.q
        return circle_norm_value(Fraction(r * self.p, self.q))

    def violations(self, k: int, lo: int, hi: int) -> frozenset:
        bound = Fraction(1, 4 * k)
        return frozenset(n for n in range(lo, hi + 1) if self.norm(n) > bound)


def fsd_member(x: CirclePoint, u, cell: FsdCell) -> bool:
    V = _Values(u, x).violations(cell.k, cell.j + 1, cell.nu)
    return cell.phi(V) <= cell.threshold


@dataclass(frozen=True)
class FsdReport:
    consistent: bool
    direct: str
    truncated: str
    failing_cell: Optional[tuple]
    beyond_depth: int
    cells: dict = field(compare=False, repr=False)

    def to_dict(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "consistent": self.consistent, "direct": self.direct,
                "truncated": self.truncated,
                "failing_cell": None if self.failing_cell is None else list(self.failing_cell),
                "beyond_depth": self.beyond_depth,
                "cells": {f"{k},{m}": c for (k, m), c in sorted(self.cells.items())}}


def fsd_consistency(x: CirclePoint, u, phi: Submeasure, kmax: int = 3, mmax: int = 3,
                    Nmax: int = 10, Jmax: int = 200) -> FsdReport:
    """Compare the truncated cell decomposition with the direct Exh(phi) verdict.

    phi is monotone, so the cell family for (k, m) holds for some N <= Nmax and
    all Nmax <= j < nu <= Jmax exactly when it holds at j = Nmax, nu = Jmax.
    A disagreement with the direct verdict is explained, not contradictory, when
    the exact exception set shows the depth is too shallow: a deeper j passes
    (direct In), or the descriptor of E_k itself passes the window (direct Out).
    Anything else, including sequence values contradicting E_k, is inconsistent.
    """
    if Jmax < Nmax + 1:
        raise ValueError("Jmax must exceed Nmax")
    direct = member_s(x, u, Exhaustive(phi))
    if not direct.decided:
        raise ValueError(f"no exact verdict for {u} at {x}")
    vals = _Values(u, x)
    lo = Nmax + 1
    cells, ok, beyond, failing = {}, True, 0, None
    for k in range(1, kmax + 1):
        V = vals.violations(k, 0, Jmax)
        E = exception_set(u, x, k)
        if V != frozenset(n for n in range(Jmax + 1) if E.contains(n)):
            ok = False
        tail = frozenset(n for n in V if n >= lo)
        for m in range(1, mmax + 1):
            passed = phi(tail) <= Fraction(1, m)
            cells[(k, m)] = passed
            if not passed and failing is None:
                failing = (k, m)
    truncated = "In" if failing is None else "Out"
    if direct.is_in and failing is not None:
        for (k, m), passed in cells.items():
            if passed:
                continue
            V = vals.violations(k, lo, Jmax)
            deeper = any(phi(frozenset(n for n in V if n > N)) <= Fraction(1, m) for N in range(Nmax + 1, Jmax))
            if deeper:
                beyond += 1
            else:
                ok = False
    if direct.is_out and failing is None:
        # the window agrees with the exact E_k (checked above), so the depth is too shallow
        beyond += 1
    return FsdReport(ok, str(direct.outcome), truncated, failing, beyond, cells)
