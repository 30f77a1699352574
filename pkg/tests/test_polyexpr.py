"""Tests for sparse exact polynomials."""
from fractions import Fraction

import pytest
from hypothesis import given, settings

from polyvariety.algebra.polyexpr import (
    PolyExpr,
    arith,
    grlex_key,
    make_monomial,
    reassemble_shift,
    shift_expand,
)
from tests.strategies import points, polynomials

x1 = PolyExpr.variable(0)
x2 = PolyExpr.variable(1)


def test_render_is_canonical():
    p = PolyExpr({make_monomial({0: 2}): Fraction(3, 2), make_monomial({1: 1}): -1, (): 5})
    assert p.render() == "3/2*x1^2 - x2 + 5"
    assert PolyExpr.zero().render() == "0"
    assert (-x1).render() == "-x1"


def test_arithmetic_and_degree():
    p = (x1 + x2) ** 2
    assert p == x1 ** 2 + 2 * x1 * x2 + x2 ** 2
    assert p.total_degree == 2
    assert PolyExpr.zero().total_degree is None
    assert arith("sub", p, p).is_zero
    assert arith("scale", x1, Fraction(1, 3)).coefficient(make_monomial({0: 1})) == Fraction(1, 3)


def test_negative_exponent_rejected():
    with pytest.raises(ValueError, match="nonnegative integer"):
        x1 ** -2


def test_grlex_key_orders_by_degree_first():
    monos = [make_monomial({0: 2}), (), make_monomial({1: 1}), make_monomial({0: 1})]
    assert sorted(monos, key=grlex_key) == [(), ((0, 1),), ((1, 1),), ((0, 2),)]


def test_shift_expand_of_square():
    t = PolyExpr.variable(0)
    family = shift_expand(t ** 2)
    assert [h for _, h in family] == [t ** 2, 2 * t, PolyExpr.constant(1)]


def test_partial_and_homogeneous_part():
    p = x1 ** 3 * x2 + 4 * x2 ** 2 + 7
    assert p.partial(make_monomial({0: 2})) == 6 * x1 * x2
    assert p.homogeneous_part(2) == 4 * x2 ** 2
    assert p.homogeneous_part(0) == PolyExpr.constant(7)


def test_translate_matches_evaluation():
    p = x1 ** 2 * x2 - 3 * x2 + 1
    shifted = p.translate({0: 2, 1: -1})
    assert shifted.evaluate({0: 1, 1: 1}) == p.evaluate({0: 3, 1: 0})


@settings(max_examples=40, deadline=None)
@given(polynomials(), points(dim=3))
def test_shift_expansion_reassembles_translate(p, s):
    """q(t + s) = sum_beta s^beta h_beta(t) as a polynomial identity."""
    identity = reassemble_shift(shift_expand(p), offset=3)
    assignment = {3 + i: PolyExpr.constant(v) for i, v in s.coords}
    assignment.update({3 + i: PolyExpr.zero() for i in range(3) if s[i] == 0})
    assert identity.substitute(assignment) == p.translate(s)


@settings(max_examples=40, deadline=None)
@given(polynomials(), polynomials(), points(dim=3))
def test_evaluation_is_a_ring_homomorphism(p, q, point):
    assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)
    assert (p - q).evaluate(point) == p.evaluate(point) - q.evaluate(point)
