from __future__ import annotations

import csv
import io
import itertools
import json
import math
import random
from fractions import Fraction

import pytest

import gen
from idealtop.charsub import (FsdCell, fsd_consistency, fsd_member, member_s, scan_csv, stern_brocot,
                              subgroup_scan_finite, tb_evidence)
from idealtop.convergence import Fact, Plant, Poly, Pow, Vec
from idealtop.errors import GroupTooLarge
from idealtop.groups import CirclePoint, FiniteAb, Outcome
from idealtop.ideals import DENSITY, FIN, PHI_DENSITY, PowersetOf, Summable, parse_descriptor

IN, OUT = Outcome.IN, Outcome.OUT
CONST = lambda c: Poly((c,))  # noqa: E731


def pt(text: str) -> CirclePoint:
    return CirclePoint.of(Fraction(text))


def brute_fin_members(orders, u):
    """Elements whose pairing with u vanishes on a long window past every preperiod."""
    L = math.lcm(*orders)
    parts = u.parts if isinstance(u, Vec) else (u,) * len(orders)
    out = []
    for x in map(lambda c: FiniteAb(orders, c), _coords(orders)):
        vals = {sum(p.at(n) * c * (L // o) for p, c, o in zip(parts, x.coords, orders)) % L
                for n in range(100, 300)}
        if vals == {0}:
            out.append(x)
    return out


def _coords(orders):
    return itertools.product(*(range(o) for o in orders))


def test_member_examples():
    assert member_s(pt("3/7"), Fact(), FIN).outcome is IN
    v = member_s(pt("1/2"), Pow(3), DENSITY)
    assert v.outcome is OUT and v.certificate.upper_density == 1
    assert member_s(FiniteAb((4,), (2,)), CONST(2), FIN).outcome is IN
    assert member_s(FiniteAb((4,), (1,)), CONST(2), FIN).outcome is OUT


@pytest.mark.parametrize("orders,u,expected", [
    ((4,), CONST(2), [(0,), (2,)]),
    ((6,), CONST(3), [(0,), (2,), (4,)]),
    ((5,), CONST(0), [(i,) for i in range(5)]),
    ((2, 3), Vec((CONST(1), Fact())), [(0, 0), (0, 1), (0, 2)]),
])
def test_finite_scan_examples(orders, u, expected):
    fam = subgroup_scan_finite(orders, u, FIN)
    assert [m.coords for m in fam.members] == expected
    assert all(v.outcome is IN for v in fam.verdicts)


def test_group_too_large():
    with pytest.raises(GroupTooLarge):
        subgroup_scan_finite((64, 65), Pow(2), FIN)
    assert subgroup_scan_finite((4, 4), Pow(2), FIN, bound=16).members


def test_finite_scans_against_brute_force_and_monotone():
    rng = random.Random(41)
    for _ in range(100):
        r = rng.randint(1, 2)
        orders = tuple(rng.randint(2, 8) for _ in range(r))
        if math.prod(orders) > 64:
            continue
        u = gen.base_sequence(rng) if rng.random() < 0.5 else Vec(tuple(gen.base_sequence(rng) for _ in range(r)))
        fin = set(subgroup_scan_finite(orders, u, FIN).members)
        assert fin == set(brute_fin_members(orders, u)), (orders, u)
        scan = lambda I: set(subgroup_scan_finite(orders, u, I).members)  # noqa: E731
        summable, dens = scan(Summable("harmonic")), scan(DENSITY)
        assert fin <= summable <= dens, (orders, u)
        assert scan(PowersetOf(parse_descriptor("squares"))) <= dens, (orders, u)


def test_finite_scan_with_a_plant_separates_ideals():
    u = Plant(CONST(0), CONST(1), parse_descriptor("squares"))
    assert len(subgroup_scan_finite((6,), u, FIN).members) == 1
    assert len(subgroup_scan_finite((6,), u, DENSITY).members) == 6


def test_stern_brocot_order():
    pts = list(stern_brocot(4))
    assert [str(p) for p in pts] == ["0", "1/2", "1/3", "2/3", "1/4", "3/4"]
    every = {Fraction(p, q) for q in range(1, 13) for p in range(q)}
    assert {p.fraction for p in stern_brocot(12)} == every


def test_tb_examples():
    fact = tb_evidence(Fact(), FIN, 20)
    assert len(fact.members.members) == len(list(stern_brocot(20))) and fact.evidence
    two = tb_evidence(Pow(2), FIN, 20)
    assert {m.fraction for m in two.members.members} == {Fraction(p, 2 ** t) for t in range(5) for p in range(2 ** t)}
    assert two.evidence and two.largest_order == 16
    one = tb_evidence(CONST(1), FIN, 10)
    assert [str(m) for m in one.members.members] == ["0"] and not one.evidence
    with pytest.raises(ValueError):
        tb_evidence(Fact(), FIN, 1)


@pytest.mark.parametrize("u,Q", [(Pow(2), 20), (Fact(), 8), (Pow(6), 12)])
def test_subgroup_axioms_on_tb_members(u, Q):
    members = tb_evidence(u, FIN, Q).members.members
    for x in members:
        assert member_s(-x, u, FIN).outcome is IN
        assert member_s(x, u, DENSITY).outcome is IN
        for y in members:
            assert member_s(x + y, u, FIN).outcome is IN, (x, y)


def test_family_serialization():
    fam = subgroup_scan_finite((4,), CONST(2), FIN)
    doc = json.loads(fam.to_json())
    assert doc["members"] == [str(m) for m in fam.members] and len(doc["members"]) == 2
    assert doc["shape"] == [4] and doc["provenance"]["seq"] == "poly:2"
    assert doc["provenance"]["bounds"] == {"group_order": 4}
    _, rows = subgroup_scan_finite((4,), CONST(2), FIN, with_rows=True)
    table = list(csv.reader(io.StringIO(scan_csv(rows))))
    assert table[0] == ["point", "verdict", "certificate-kind", "witness-k"]
    assert [r[1] for r in table[1:]] == ["In", "Out", "In", "Out"]
    assert table[2][2] == "ideal-witness"


def test_workers_preserve_order():
    serial = subgroup_scan_finite((3, 5), Pow(2), DENSITY, with_rows=True)
    parallel = subgroup_scan_finite((3, 5), Pow(2), DENSITY, workers=2, with_rows=True)
    assert serial[0] == parallel[0]
    assert [(str(p), str(v.outcome)) for p, v in serial[1]] == [(str(p), str(v.outcome)) for p, v in parallel[1]]
    assert tb_evidence(Fact(), FIN, 9, workers=2).members == tb_evidence(Fact(), FIN, 9).members


def test_fsd_member_examples():
    assert fsd_member(pt("1/3"), Pow(2), FsdCell(1, 2, 0, 5, PHI_DENSITY)) is False
    assert fsd_member(pt("1/8"), Pow(2), FsdCell(1, 2, 2, 10, PHI_DENSITY)) is True
    assert fsd_member(pt("1/5"), CONST(0), FsdCell(3, 7, 0, 40, PHI_DENSITY)) is True
    with pytest.raises(ValueError):
        FsdCell(1, 1, 4, 4, PHI_DENSITY)
    assert FsdCell(1, 3, 0, 1, PHI_DENSITY).threshold == Fraction(1, 3)


def test_fsd_member_monotone_under_smaller_violations():
    rng = random.Random(42)
    for _ in range(200):
        u, x, y = gen.base_sequence(rng), gen.point(rng), gen.point(rng)
        k, m, j = rng.randint(1, 3), rng.randint(1, 4), rng.randint(0, 5)
        cell = FsdCell(k, m, j, j + rng.randint(1, 30), PHI_DENSITY)
        viol = lambda z: {n for n in range(cell.j + 1, cell.nu + 1)  # noqa: E731
                          if min(v := Fraction(u.at(n) * z.numerator, z.denominator) % 1, 1 - v) > Fraction(1, 4 * k)}
        if viol(y) <= viol(x) and fsd_member(x, u, cell):
            assert fsd_member(y, u, cell)


def test_fsd_consistency_examples():
    a = fsd_consistency(pt("1/8"), Pow(2), PHI_DENSITY)
    assert a.consistent and a.direct == "In" and a.truncated == "In"
    b = fsd_consistency(pt("1/3"), Pow(2), PHI_DENSITY)
    assert b.consistent and b.direct == "Out" and b.failing_cell == (1, 2)
    c = fsd_consistency(pt("2/7"), CONST(0), PHI_DENSITY)
    assert c.consistent and c.direct == "In" and all(c.cells.values())
    assert json.loads(json.dumps(b.to_dict()))["failing_cell"] == [1, 2]
