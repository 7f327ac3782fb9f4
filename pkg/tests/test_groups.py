from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from idealtop.errors import ParseError, ShapeMismatch, ZeroDenominator
from idealtop.groups import (CirclePoint, FiniteAb, IntVector, NumericCirclePoint, Outcome, SparseSum,
                             all_elements, circle_norm, fingerprint, in_Tk, normalize_circle, pair_eval,
                             parse_point)


@pytest.mark.parametrize("num,den,expected", [(7, 4, "3/4"), (-1, 3, "2/3"), (6, 4, "1/2"), (8, 4, "0")])
def test_normalize_circle(num, den, expected):
    assert str(normalize_circle(num, den)) == expected


def test_zero_denominator():
    with pytest.raises(ZeroDenominator):
        normalize_circle(1, 0)
    with pytest.raises(ZeroDenominator):
        parse_point("1/0")


def test_unreduced_points_are_rejected():
    with pytest.raises(ValueError):
        CirclePoint(2, 4)
    with pytest.raises(ValueError):
        CirclePoint(5, 4)


@pytest.mark.parametrize("x,expected", [("0", Fraction(0)), ("1/3", Fraction(1, 3)), ("3/4", Fraction(1, 4))])
def test_circle_norm(x, expected):
    assert circle_norm(parse_point(x)) == expected


@pytest.mark.parametrize("x,k,expected", [("1/4", 1, True), ("1/3", 1, False), ("1/8", 2, True), ("3/4", 1, True)])
def test_in_Tk_closed_arc(x, k, expected):
    assert in_Tk(parse_point(x), k) is expected


def test_in_Tk_numeric_is_three_valued():
    assert in_Tk(NumericCirclePoint(Fraction(1, 10), Fraction(1, 1000)), 1) is Outcome.IN
    assert in_Tk(NumericCirclePoint(Fraction(4, 10), Fraction(1, 1000)), 1) is Outcome.OUT
    assert in_Tk(NumericCirclePoint(Fraction(1, 4), Fraction(1, 10 ** 9)), 1) is Outcome.UNDECIDED
    # scaling widens the error bar
    x = NumericCirclePoint(Fraction(1, 3), Fraction(1, 100))
    assert (50 * x).eps == Fraction(1, 2)
    assert in_Tk(50 * x, 3) is Outcome.UNDECIDED


def test_in_Tk_rejects_bad_k():
    with pytest.raises(ValueError):
        in_Tk(CirclePoint(0, 1), 0)


@pytest.mark.parametrize("orders,a,b,expected", [
    ((4,), (2,), (1,), "1/2"),
    ((4,), (0,), (3,), "0"),
    ((2, 3), (1, 1), (1, 2), "1/6"),
])
def test_pair_eval(orders, a, b, expected):
    assert str(pair_eval(FiniteAb(orders, a), FiniteAb(orders, b))) == expected


def test_pair_eval_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        pair_eval(FiniteAb((4,), (1,)), FiniteAb((2,), (1,)))


@pytest.mark.parametrize("orders", [(4,), (2, 3), (2, 2, 2), (8,), (3, 3)])
def test_pairing_is_bilinear_exhaustively(orders):
    els = list(all_elements(orders))
    zero = FiniteAb.zero(orders)
    for a in els:
        assert pair_eval(zero, a) == CirclePoint(0, 1)
        for b, c in itertools.product(els, repeat=2):
            assert pair_eval(a, b + c) == pair_eval(a, b) + pair_eval(a, c)


def test_pairing_oracle_by_floating_sum():
    # independent check: the pairing is the fractional part of the real sum
    for a, b in itertools.product(all_elements((2, 3)), repeat=2):
        s = a.coords[0] * b.coords[0] / 2 + a.coords[1] * b.coords[1] / 3
        assert abs(float(pair_eval(a, b).fraction) - (s % 1)) < 1e-12


fractions_ = st.fractions(min_value=-5, max_value=5, max_denominator=60)


@given(fractions_, fractions_)
def test_triangle_inequality_and_symmetry(a, b):
    x, y = CirclePoint.of(a), CirclePoint.of(b)
    assert circle_norm(x + y) <= circle_norm(x) + circle_norm(y)
    assert circle_norm(-x) == circle_norm(x)


@given(st.integers(-10 ** 6, 10 ** 6), st.integers(1, 10 ** 4))
def test_normalize_idempotent(p, q):
    x = normalize_circle(p, q)
    assert normalize_circle(x.numerator, x.denominator) == x
    assert parse_point(str(x)) == x


def _laws(a, b, c, zero):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a + zero == a
    assert a + (-a) == zero


@given(st.lists(fractions_, min_size=3, max_size=3))
def test_circle_group_laws(vals):
    a, b, c = map(CirclePoint.of, vals)
    _laws(a, b, c, CirclePoint(0, 1))


@given(st.lists(st.lists(st.integers(-10 ** 30, 10 ** 30), min_size=3, max_size=3), min_size=3, max_size=3))
def test_vector_group_laws(rows):
    a, b, c = (IntVector(tuple(r)) for r in rows)
    _laws(a, b, c, IntVector((0, 0, 0)))


@given(st.lists(st.lists(st.integers(-50, 50), min_size=2, max_size=2), min_size=3, max_size=3))
def test_finite_group_laws(rows):
    a, b, c = (FiniteAb((4, 6), tuple(r)) for r in rows)
    _laws(a, b, c, FiniteAb.zero((4, 6)))
    assert all(0 <= x < n for x, n in zip(a.coords, a.orders))


@given(st.lists(st.tuples(st.integers(0, 3), st.frozensets(st.integers(0, 20))), min_size=3, max_size=3))
def test_sparse_sum_group_laws(rows):
    a, b, c = (SparseSum(h, t) for h, t in rows)
    _laws(a, b, c, SparseSum())
    assert 2 * a == SparseSum(2 * a.head, frozenset())


def test_finite_group_canonical_forms_and_text():
    a = FiniteAb((4, 6), (5, -1))
    assert a.coords == (1, 5)
    assert str(a) == "1,5@4,6"
    assert parse_point("1,5@4,6") == a
    assert fingerprint(a) == fingerprint(FiniteAb((4, 6), (1, 5)))
    assert fingerprint(a) != fingerprint(FiniteAb((4, 6), (1, 4)))


def test_parse_point_errors():
    for bad in ["", "abc", "1,2@3", "num:x"]:
        with pytest.raises(ParseError):
            parse_point(bad)
    assert parse_point("0.25") == CirclePoint(1, 4)
