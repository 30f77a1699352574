"""Tests for nested schedules, d_f estimates and the trichotomy classifier."""
import pytest

from polyvariety.algebra.group import Subgroup
from polyvariety.algebra.polyexpr import PolyExpr
from polyvariety.analysis.classify import ClassifyBudget, Verdict, classify
from polyvariety.analysis.family import FunctionFamily
from polyvariety.analysis.search import DfSearch, ScheduleBudget, d_f_estimate

x1 = PolyExpr.variable(0)
x2 = PolyExpr.variable(1)

SMALL = ScheduleBudget(max_level=4, random_candidates=2)


def sum_of_cubes() -> FunctionFamily:
    return FunctionFamily.schema(lambda i: PolyExpr.variable(i - 1) ** 3, "sum_i x_i^3")


def sum_of_powers() -> FunctionFamily:
    return FunctionFamily.schema(lambda i: PolyExpr.variable(i - 1) ** i, "sum_i x_i^i")


def test_rank_one_estimate_for_cubes():
    estimate = d_f_estimate(sum_of_cubes(), 1, SMALL)
    assert estimate.value == 4
    assert estimate.witness == Subgroup.coordinate([0], 1)
    assert estimate.lower_bound
    assert estimate.schedule_id == "nested-c2-b3-s7"


def test_cubes_grow_by_two_per_rank():
    search = DfSearch(sum_of_cubes(), SMALL)
    assert [search.estimate(r).value for r in (1, 2, 3)] == [4, 6, 8]


def test_rank_zero():
    assert d_f_estimate(sum_of_cubes(), 0, SMALL).value == 0
    shifted = FunctionFamily.concrete(x1 + 1)
    assert d_f_estimate(shifted, 0, SMALL).value == 1


def test_concrete_square_is_constant_in_rank():
    family = FunctionFamily.concrete((x1 + x2) ** 2)
    search = DfSearch(family, SMALL)
    assert [search.estimate(r).value for r in (1, 2, 3)] == [3, 3, 3]


def test_estimates_are_monotone():
    search = DfSearch(sum_of_powers(), SMALL)
    table = [[search.estimate(r, level).value for level in (1, 2, 3, 4)] for r in (1, 2)]
    for row in table:
        assert row == sorted(row)
    assert all(a <= b for a, b in zip(table[0], table[1]))


def test_schedule_is_deterministic():
    first = DfSearch(sum_of_cubes(), SMALL).estimate(2)
    second = DfSearch(sum_of_cubes(), SMALL).estimate(2)
    assert first.to_dict() == second.to_dict()


def test_budget_validation():
    with pytest.raises(ValueError, match="budget must be positive"):
        ScheduleBudget(random_candidates=0)
    with pytest.raises(ValueError, match="exceeds max_level"):
        ClassifyBudget(min_level=5, max_level=4)


def test_classify_sum_of_cubes_is_fake():
    outcome = classify(sum_of_cubes(), ClassifyBudget(max_level=6, random_candidates=2))
    assert outcome.verdict is Verdict.FAKE_POLYNOMIAL
    assert outcome.certificate["stabilized"] == {"1": 4, "2": 6, "3": 8}
    assert outcome.certificate["additive_dims"] == {"1": 1, "2": 2, "3": 3}


def test_classify_sum_of_powers_is_not_generalized():
    outcome = classify(sum_of_powers(), ClassifyBudget(max_level=6, random_candidates=2))
    assert outcome.verdict is Verdict.NOT_GENERALIZED
    assert [row["value"] for row in outcome.certificate["row"]] == [4, 5, 6, 7]
    assert outcome.certificate["chain_length"] == 7


def test_classify_square_is_polynomial():
    outcome = classify(FunctionFamily.concrete((x1 + x2) ** 2))
    assert outcome.verdict is Verdict.POLYNOMIAL
    assert outcome.certificate["stable_value"] == 3
    assert outcome.certificate["taylor_rank"] == 3


def test_classify_additive_schema_is_polynomial():
    family = FunctionFamily.schema(lambda i: PolyExpr.variable(i - 1).scale(i), "sum_i i*x_i")
    assert classify(family, ClassifyBudget(max_level=5, random_candidates=2)).verdict is Verdict.POLYNOMIAL


def test_tight_budget_is_inconclusive():
    budget = ClassifyBudget(min_level=3, max_level=4, random_candidates=1, stable_levels=3)
    assert classify(sum_of_cubes(), budget).verdict is Verdict.INCONCLUSIVE
