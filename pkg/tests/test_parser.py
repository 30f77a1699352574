"""Tests for the function DSL."""
from fractions import Fraction

import pytest
from hypothesis import given, settings

from polyvariety.algebra.polyexpr import PolyExpr
from polyvariety.analysis.family import FamilyKind
from polyvariety.dsl.parser import FunctionSpec, ParseError, parse_function
from tests.strategies import polynomials

x1 = PolyExpr.variable(0)
x2 = PolyExpr.variable(1)


def test_concrete_polynomial():
    spec = parse_function("x1^3 + x2^3")
    assert spec.kind is FamilyKind.CONCRETE
    assert spec.polynomial == x1 ** 3 + x2 ** 3
    assert spec.ambient == 2
    assert spec.polynomial.total_degree == 3


def test_precedence_and_unary_minus():
    assert parse_function("-x1^2").polynomial == -(x1 ** 2)
    assert parse_function("2*x1 - 3*x2 + 1").polynomial == 2 * x1 - 3 * x2 + 1
    assert parse_function("(x1 + x2)^2").polynomial == (x1 + x2) ** 2
    assert parse_function("x1^2^1").polynomial == x1 ** 2
    assert parse_function("3/2*x1").polynomial == x1.scale(Fraction(3, 2))
    assert parse_function("x1^(1+1)").polynomial == x1 ** 2


def test_schema_family():
    spec = parse_function("sum_i x_i^3")
    assert spec.is_schema
    family = spec.family()
    assert family.materialize(2) == x1 ** 3 + x2 ** 3
    powers = parse_function("sum_i x_i^i").family()
    assert powers.materialize(3) == x1 + x2 ** 2 + PolyExpr.variable(2) ** 3


def test_negative_exponent_rejected():
    with pytest.raises(ParseError, match="exponent must be a nonnegative integer") as info:
        parse_function("x1^(-2)")
    assert info.value.line == 1
    assert info.value.column == 5


def test_zero_index_rejected():
    with pytest.raises(ParseError, match="1-based"):
        parse_function("x0 + x1")


def test_syntax_error_position():
    with pytest.raises(ParseError) as info:
        parse_function("x1 +\n  * x2")
    assert (info.value.line, info.value.column) == (2, 3)
    assert "x<n>" in info.value.expected


def test_misplaced_schema_symbols():
    with pytest.raises(ParseError, match="only allowed inside sum_i"):
        parse_function("x_i^2")
    with pytest.raises(ParseError, match="schema terms use x_i"):
        parse_function("sum_i x1^2")
    with pytest.raises(ParseError, match="nonzero constant"):
        parse_function("x1/x2")


def test_incoherent_schema_rejected():
    with pytest.raises(ParseError, match="vanish"):
        parse_function("sum_i (x_i + 1)^2")


def test_empty_input():
    with pytest.raises(ParseError, match="empty"):
        parse_function("   ")


@pytest.mark.parametrize(
    "source",
    ["sum_i x_i^3", "sum_i x_i^i", "sum_i -(2*x_i - i*x_i^2)", "sum_i (x_i^2)^(i+1)", "sum_i x_i^(-1+2)"],
)
def test_schema_round_trip(source):
    spec = parse_function(source)
    again = parse_function(spec.render())
    assert again == spec
    assert again.render() == spec.render()


@settings(max_examples=40, deadline=None)
@given(polynomials(max_vars=3, max_degree=3))
def test_concrete_round_trip(p):
    spec = parse_function(p.render())
    assert spec.polynomial == p
    assert parse_function(spec.render()) == spec


def test_spec_equality_ignores_source_text():
    assert parse_function("x1 + x1") == parse_function("2*x1")
    assert isinstance(parse_function("x1"), FunctionSpec)


@pytest.mark.parametrize("source", ["(" * 600 + "x1" + ")" * 600, "-" * 600 + "x1", "x1^" * 600 + "2"])
def test_deep_nesting_is_a_parse_error(source):
    with pytest.raises(ParseError, match="nests deeper"):
        parse_function(source)


def test_moderate_nesting_still_parses():
    assert parse_function("(" * 50 + "x1 + 1" + ")" * 50).polynomial == x1 + 1
