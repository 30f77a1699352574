"""Tests for coherent function families."""
import math

import pytest

from polyvariety.algebra.polyexpr import PolyExpr
from polyvariety.analysis.family import FunctionFamily

x1 = PolyExpr.variable(0)
x2 = PolyExpr.variable(1)


def test_concrete_restriction_drops_coordinates():
    family = FunctionFamily.concrete(x1 ** 2 + x1 * x2 + x2)
    assert family.materialize(1) == x1 ** 2
    assert family.materialize(2) == x1 ** 2 + x1 * x2 + x2
    assert family.hom_dimension == 2
    family.check_coherence([0, 1])


def test_schema_partial_sums():
    family = FunctionFamily.schema(lambda i: PolyExpr.variable(i - 1) ** 2, "sum_i x_i^2")
    assert family.materialize(0).is_zero
    assert family.materialize(2) == x1 ** 2 + x2 ** 2
    assert family.hom_dimension == math.inf
    family.check_coherence(range(1, 5))


def test_incoherent_schema_detected():
    family = FunctionFamily.schema(lambda i: (PolyExpr.variable(i - 1) + 1) ** 2, "sum_i (x_i+1)^2")
    with pytest.raises(ValueError, match="incoherent"):
        family.check_coherence([1])


def test_schema_term_must_use_its_own_coordinate():
    family = FunctionFamily.schema(lambda i: x1 * PolyExpr.variable(i - 1), "bad")
    with pytest.raises(ValueError, match="other coordinates"):
        family.materialize(2)


def test_ambient_too_small():
    with pytest.raises(ValueError, match="ambient"):
        FunctionFamily.concrete(x2, ambient=1)


def test_deep_schema_levels_build_iteratively():
    family = FunctionFamily.schema(lambda i: PolyExpr.variable(i - 1), "sum_i x_i")
    assert family.materialize(3) == x1 + x2 + PolyExpr.variable(2)
    deep = family.materialize(2000)
    assert len(deep.terms) == 2000
    assert deep.total_degree == 1
    assert deep.coefficient(((1999, 1),)) == 1
    assert family.materialize(1999) == deep - PolyExpr.variable(1999)
