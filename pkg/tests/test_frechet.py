"""Tests for the Fréchet equation forms and difference degree."""
from hypothesis import given, settings

from polyvariety.analysis.frechet import (
    EXCEEDS_CAP,
    degree_by_differences,
    djokovic_consistency,
    frechet_equal_test,
    frechet_general_test,
    symbolic_difference,
)
from polyvariety.algebra.polyexpr import PolyExpr
from tests.strategies import polynomials

x1 = PolyExpr.variable(0)
x2 = PolyExpr.variable(1)


def test_square_needs_three_differences():
    f = x1 ** 2
    assert not frechet_general_test(f, 1)
    assert not frechet_equal_test(f, 1)
    assert frechet_general_test(f, 2)
    assert frechet_equal_test(f, 2)


def test_constants_and_zero():
    assert frechet_general_test(PolyExpr.constant(5), 0)
    assert not frechet_equal_test(x1, 0)
    assert frechet_general_test(PolyExpr.zero(), 0)


def test_symbolic_difference_of_product():
    # stride 2: increment block 1 holds variables 2, 3
    y1, y2 = PolyExpr.variable(2), PolyExpr.variable(3)
    assert symbolic_difference(x1 * x2, 1, 2) == x1 * y2 + y1 * x2 + y1 * y2


def test_degree_by_differences():
    assert degree_by_differences(x1 ** 3 + x1 * x2, 10) == 3
    assert degree_by_differences(PolyExpr.constant(4), 3) == 0
    assert degree_by_differences(PolyExpr.zero(), 3) is None
    assert degree_by_differences(x1 ** 5, 2) == EXCEEDS_CAP


def test_consistency_report_flip_point():
    report = djokovic_consistency(x1 ** 2 * x2 - x2)
    assert report.agree
    assert report.flip_point == 3
    assert report.to_dict()["pairs"][0] == {"n": 0, "general": False, "equal": False}


@settings(max_examples=25, deadline=None)
@given(polynomials(max_vars=2, max_degree=3, max_terms=3))
def test_both_forms_agree(f):
    report = djokovic_consistency(f, n_max=4)
    assert report.agree
    if not f.is_zero:
        assert report.flip_point == f.total_degree


@settings(max_examples=25, deadline=None)
@given(polynomials(max_vars=2, max_degree=3, max_terms=3))
def test_frechet_tests_stay_true_for_larger_n(f):
    for test in (frechet_general_test, frechet_equal_test):
        results = [test(f, n) for n in range(6)]
        first = results.index(True) if True in results else len(results)
        assert all(results[first:])
