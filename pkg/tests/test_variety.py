"""Tests for translate spans, variety dimensions and difference profiles."""
import random

import pytest
from hypothesis import given, settings

from polyvariety.algebra.group import GroupElement, Subgroup, apply_measure
from polyvariety.algebra.linalg import matrix_rank, rank_of
from polyvariety.algebra.polyexpr import PolyExpr
from polyvariety.analysis.family import FunctionFamily
from polyvariety.analysis.variety import (
    additive_subspace_basis,
    difference_chain,
    difference_profile,
    translate_combination,
    translate_span_basis,
    variety_dim,
)
from tests.strategies import polynomials

x1 = PolyExpr.variable(0)
x2 = PolyExpr.variable(1)


def cubes(n: int) -> PolyExpr:
    return sum((PolyExpr.variable(i) ** 3 for i in range(n)), PolyExpr.zero())


def test_translate_span_of_square():
    t = PolyExpr.variable(0)
    assert translate_span_basis(t ** 2) == [t ** 2, 2 * t, PolyExpr.constant(1)]
    assert translate_span_basis(PolyExpr.constant(4)) == [PolyExpr.constant(4)]
    assert translate_span_basis(PolyExpr.zero()) == []


def test_sum_of_two_cubes_has_dimension_six():
    # span {t1^3 + t2^3, t1^2, t2^2, t1, t2, 1}
    assert len(translate_span_basis(cubes(2))) == 6
    assert variety_dim(cubes(2), Subgroup.full(2)).dimension == 6


def test_variety_dim_examples():
    assert variety_dim(x1 ** 2, Subgroup.full(1)).dimension == 3
    assert variety_dim(PolyExpr.zero(), Subgroup.full(2)).dimension == 0
    assert variety_dim((x1 + x2) ** 2, Subgroup.full(2)).dimension == 3


def test_additive_subspace():
    assert additive_subspace_basis([x1 ** 2, x1, PolyExpr.constant(1)]) == [x1]
    assert additive_subspace_basis([x1 * x2, x1, x2, PolyExpr.constant(1)]) == [x1, x2]
    assert additive_subspace_basis([PolyExpr.constant(1)]) == []
    # x1 + 1 and 1 together contain x1
    assert additive_subspace_basis([x1 + 1, PolyExpr.constant(1)]) == [x1]


@pytest.mark.parametrize("n", range(1, 9))
def test_additive_dimension_of_sum_of_cubes(n):
    report = variety_dim(cubes(n), Subgroup.full(n))
    assert report.additive_dim == n
    assert report.dimension == 2 * n + 2


def test_span_contains_random_translates():
    rng = random.Random(3)
    q = x1 ** 3 * x2 - 2 * x2 ** 2 + x1
    basis = translate_span_basis(q)
    for _ in range(20):
        s = GroupElement.from_dense([rng.randint(-9, 9), rng.randint(-9, 9)])
        assert rank_of(basis + [q.translate(s)]) == len(basis)


def test_translate_combination_reproduces_basis():
    q = x1 ** 2 * x2 + x2
    for target in translate_span_basis(q):
        nu = translate_combination(q, target)
        assert nu is not None
        assert apply_measure(nu, q) == target
    assert translate_combination(q, x1 ** 5) is None


def test_difference_chain_lengths():
    chain = difference_chain(x1 ** 3, GroupElement.unit(0))
    assert len(chain) == 4
    assert [g.total_degree for g in chain] == [3, 2, 1, 0]
    assert difference_chain(PolyExpr.zero(), GroupElement.unit(0)) == []


def test_difference_profile_stabilizes():
    family = FunctionFamily.schema(lambda i: PolyExpr.variable(i - 1) ** 3, "sum_i x_i^3")
    rows = difference_profile(family, GroupElement.from_dense([1, 1]), [2, 3, 4, 5])
    assert rows[0].difference == 3 * x1 ** 2 + 3 * x1 + 3 * x2 ** 2 + 3 * x2 + 2
    assert [row.dimension for row in rows] == [4, 4, 4, 4]
    with pytest.raises(ValueError):
        difference_profile(family, GroupElement.from_dense([1, 1]), [1])


def brute_force_dimension(q: PolyExpr, rng: random.Random) -> int:
    """Rank of 50 translates sampled on a 9 x 9 grid."""
    grid = [{0: a, 1: b} for a in range(-4, 5) for b in range(-4, 5)]
    rows = []
    for _ in range(50):
        s = {0: rng.randint(-6, 6), 1: rng.randint(-6, 6)}
        shifted = q.translate(s)
        rows.append([shifted.evaluate(point) for point in grid])
    return matrix_rank(rows, len(grid))


@settings(max_examples=15, deadline=None)
@given(polynomials(max_vars=2, max_degree=4))
def test_variety_dim_matches_grid_oracle(q):
    assert variety_dim(q, Subgroup.full(2)).dimension == brute_force_dimension(q, random.Random(11))
