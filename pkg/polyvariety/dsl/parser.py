"""Precedence-climbing parser for polynomial expressions and ``sum_i`` schemas.

Grammar (whitespace insignificant)::

    spec    := expr | "sum_i" expr
    expr    := expr ("+" | "-") expr | expr ("*" | "/") expr | "-" expr
             | expr "^" expr | "(" expr ")" | integer | var
    var     := "x" <n>            concrete coordinate, 1-based
             | "x_i" | "i"        schema coordinate and its index

Exponents must evaluate to nonnegative integers; division is by nonzero
constants only. Schema terms must vanish at the origin so the family is coherent.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, List, Optional

from ..algebra.polyexpr import PolyExpr
from ..analysis.family import FamilyKind, FunctionFamily

MAX_EXPONENT = 64
MAX_NESTING = 100
COHERENCE_LEVELS = (1, 2, 3)

# groups of increasing binding power; unary minus sits between "*" and "^"
OPERATORS = [
    [("+", "left"), ("-", "left")],
    [("*", "left"), ("/", "left")],
    [("^", "right")],
]
OPERATOR_PREC = {name: idx + 1 for idx, group in enumerate(OPERATORS) for name, _ in group}
OPERATOR_ASSOC = {name: assoc for group in OPERATORS for name, assoc in group}
UNARY_PREC = 2.5
ATOM_PREC = 10


class ParseError(ValueError):
    """Syntax or semantic error in a function spec, with a 1-based source position."""

    def __init__(self, message: str, line: int = 1, column: int = 1, expected: Iterable[str] = ()):
        self.message = message
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        detail = f"line {line}, column {column}: {message}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)

    def to_dict(self) -> dict:
        return {
            "message": self.message,
            "line": self.line,
            "column": self.column,
            "expected": list(self.expected),
        }


# ----------------------------------------------------------------------
# Tokens
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # NUM, VAR, XI, INDEX, SUM, OP, END
    text: str
    line: int
    column: int
    value: Optional[int] = None


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_COORD = re.compile(r"x([0-9]+)$")
_EXPR_START = ("integer", "x<n>", "x_i", "i", "(", "-")


def tokenize(source: str) -> List[Token]:
    tokens: List[Token] = []
    line, column, pos = 1, 1, 0
    while pos < len(source):
        c = source[pos]
        if c == "\n":
            line, column, pos = line + 1, 1, pos + 1
            continue
        if c.isspace():
            column, pos = column + 1, pos + 1
            continue
        if c.isdigit():
            end = pos
            while end < len(source) and source[end].isdigit():
                end += 1
            text = source[pos:end]
            tokens.append(Token("NUM", text, line, column, int(text)))
        elif c in OPERATOR_PREC or c in "()":
            text = c
            tokens.append(Token("OP", c, line, column))
        elif c.isalpha() or c == "_":
            text = _IDENT.match(source, pos).group(0)
            match = _COORD.match(text)
            if text == "sum_i":
                tokens.append(Token("SUM", text, line, column))
            elif text == "x_i":
                tokens.append(Token("XI", text, line, column))
            elif text == "i":
                tokens.append(Token("INDEX", text, line, column))
            elif match:
                index = int(match.group(1))
                if index == 0:
                    raise ParseError("coordinate indices are 1-based; x0 does not exist", line, column)
                tokens.append(Token("VAR", text, line, column, index))
            else:
                raise ParseError(f"unknown identifier {text!r}", line, column, ("x<n>", "x_i", "i", "sum_i"))
        else:
            raise ParseError(f"unexpected character {c!r}", line, column, _EXPR_START)
        column += len(text)
        pos += len(text)
    tokens.append(Token("END", "", line, column))
    return tokens


# ----------------------------------------------------------------------
# Syntax tree
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Node:
    line: int = field(default=1, compare=False, repr=False)
    column: int = field(default=1, compare=False, repr=False)

    @property
    def prec(self) -> float:
        return ATOM_PREC

    def fail(self, message: str) -> ParseError:
        return ParseError(message, self.line, self.column)


@dataclass(frozen=True)
class Num(Node):
    value: int = 0

    def render(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class Coord(Node):
    """``x<n>`` (1-based) or, with ``index=None``, the schema coordinate ``x_i``."""

    index: Optional[int] = None

    def render(self) -> str:
        return "x_i" if self.index is None else f"x{self.index}"


@dataclass(frozen=True)
class Index(Node):
    def render(self) -> str:
        return "i"


@dataclass(frozen=True)
class Neg(Node):
    operand: Optional[Node] = None

    @property
    def prec(self) -> float:
        return UNARY_PREC

    def render(self) -> str:
        inner = render_node(self.operand)
        return f"-({inner})" if self.operand.prec < UNARY_PREC else f"-{inner}"


@dataclass(frozen=True)
class BinOp(Node):
    op: str = "+"
    left: Optional[Node] = None
    right: Optional[Node] = None

    @property
    def prec(self) -> float:
        return OPERATOR_PREC[self.op]

    def render(self) -> str:
        prec = self.prec
        if OPERATOR_ASSOC[self.op] == "right":
            left_parens = self.left.prec <= prec
            right_parens = self.right.prec < prec
        else:
            left_parens = self.left.prec < prec
            right_parens = self.right.prec <= prec
        left = render_node(self.left)
        right = render_node(self.right)
        if left_parens:
            left = f"({left})"
        if right_parens:
            right = f"({right})"
        if self.op == "^":
            return f"{left}^{right}"
        if self.op in "*/":
            return f"{left}{self.op}{right}"
        return f"{left} {self.op} {right}"


def render_node(node: Node) -> str:
    return node.render()


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------

class _Parser:
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.pos = 0
        self.depth = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect_end(self) -> None:
        token = self.peek()
        if token.kind != "END":
            raise ParseError(f"unexpected {token.text!r}", token.line, token.column, ("+", "-", "*", "/", "^", "end of input"))

    def parse(self, min_prec: float = 0) -> Node:
        if self.depth >= MAX_NESTING:
            token = self.peek()
            raise ParseError(f"expression nests deeper than {MAX_NESTING} levels", token.line, token.column)
        self.depth += 1
        try:
            return self._parse(min_prec)
        finally:
            self.depth -= 1

    def _parse(self, min_prec: float) -> Node:
        lhs = self.atom()
        while True:
            token = self.peek()
            if token.kind != "OP" or token.text not in OPERATOR_PREC:
                return lhs
            prec = OPERATOR_PREC[token.text]
            if prec < min_prec:
                return lhs
            self.advance()
            next_min = prec if OPERATOR_ASSOC[token.text] == "right" else prec + 1
            rhs = self.parse(next_min)
            lhs = BinOp(token.line, token.column, op=token.text, left=lhs, right=rhs)

    def atom(self) -> Node:
        token = self.advance()
        if token.kind == "NUM":
            return Num(token.line, token.column, value=token.value)
        if token.kind == "VAR":
            return Coord(token.line, token.column, index=token.value)
        if token.kind == "XI":
            return Coord(token.line, token.column, index=None)
        if token.kind == "INDEX":
            return Index(token.line, token.column)
        if token.kind == "OP" and token.text == "-":
            return Neg(token.line, token.column, operand=self.parse(OPERATOR_PREC["^"]))
        if token.kind == "OP" and token.text == "(":
            inner = self.parse(0)
            closing = self.advance()
            if closing.kind != "OP" or closing.text != ")":
                raise ParseError("unbalanced parenthesis", closing.line, closing.column, (")",))
            return inner
        if token.kind == "END":
            raise ParseError("unexpected end of input", token.line, token.column, _EXPR_START)
        if token.kind == "SUM":
            raise ParseError("sum_i may only start a spec", token.line, token.column, _EXPR_START)
        raise ParseError(f"unexpected {token.text!r}", token.line, token.column, _EXPR_START)


def _check_coordinates(node: Node, schema: bool) -> None:
    if isinstance(node, Coord):
        if schema and node.index is not None:
            raise node.fail(f"schema terms use x_i, not {node.render()}")
        if not schema and node.index is None:
            raise node.fail("x_i is only allowed inside sum_i")
    elif isinstance(node, Index) and not schema:
        raise node.fail("the index i is only allowed inside sum_i")
    elif isinstance(node, Neg):
        _check_coordinates(node.operand, schema)
    elif isinstance(node, BinOp):
        _check_coordinates(node.left, schema)
        _check_coordinates(node.right, schema)


# ----------------------------------------------------------------------
# Evaluation
# ----------------------------------------------------------------------

def evaluate_node(node: Node, i: Optional[int] = None) -> PolyExpr:
    """Polynomial value of ``node``; ``i`` is the schema coordinate (1-based)."""
    if isinstance(node, Num):
        return PolyExpr.constant(node.value)
    if isinstance(node, Coord):
        index = node.index if node.index is not None else i
        return PolyExpr.variable(index - 1)
    if isinstance(node, Index):
        return PolyExpr.constant(i)
    if isinstance(node, Neg):
        return -evaluate_node(node.operand, i)
    assert isinstance(node, BinOp)
    left = evaluate_node(node.left, i)
    right = evaluate_node(node.right, i)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    if node.op == "/":
        if right.total_degree not in (0,):
            raise node.fail("division is only by a nonzero constant")
        return left.scale(1 / right.constant_term)
    exponent = right.constant_term if right.total_degree in (None, 0) else None
    if exponent is None or exponent.denominator != 1 or exponent < 0:
        raise node.right.fail("exponent must be a nonnegative integer")
    if exponent > MAX_EXPONENT:
        raise node.right.fail(f"exponent {exponent} exceeds the limit {MAX_EXPONENT}")
    return left ** int(exponent)


# ----------------------------------------------------------------------
# Function specs
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class FunctionSpec:
    """Parsed function: a concrete polynomial on ℤⁿ or a ``sum_i`` schema on ℤ_ω."""

    kind: FamilyKind
    polynomial: Optional[PolyExpr] = None
    ambient: int = 0
    body: Optional[Node] = None
    source: str = field(default="", compare=False)

    @property
    def is_schema(self) -> bool:
        return self.kind is FamilyKind.SCHEMA

    def render(self) -> str:
        """Canonical text; parsing it gives back an equal spec."""
        if self.is_schema:
            return f"sum_i {render_node(self.body)}"
        return self.polynomial.render()

    def schema_term(self, i: int) -> PolyExpr:
        return evaluate_node(self.body, i)

    def family(self) -> FunctionFamily:
        return self._family

    @cached_property
    def _family(self) -> FunctionFamily:
        if self.is_schema:
            return FunctionFamily.schema(self.schema_term, self.render())
        return FunctionFamily.concrete(self.polynomial, self.ambient, self.render())

    def at_level(self, level: int) -> PolyExpr:
        """A concrete polynomial: the polynomial itself, or the schema materialized at ``level``."""
        if self.is_schema:
            return self.family().materialize(level)
        return self.polynomial

    def to_dict(self) -> dict:
        data = {"kind": self.kind.value, "canonical": self.render()}
        if not self.is_schema:
            data["ambient"] = self.ambient
            data["degree"] = self.polynomial.total_degree
        return data


def parse_function(src: str) -> FunctionSpec:
    if not src or not src.strip():
        raise ParseError("empty function spec", 1, 1, _EXPR_START)
    tokens = tokenize(src)
    parser = _Parser(tokens)
    first = parser.peek()
    schema = first.kind == "SUM"
    if schema:
        parser.advance()
    body = parser.parse(0)
    parser.expect_end()
    try:
        return _build_spec(body, schema, src, first)
    except RecursionError:
        raise ParseError("expression is too long to evaluate", first.line, first.column) from None


def _build_spec(body: Node, schema: bool, src: str, first: Token) -> FunctionSpec:
    _check_coordinates(body, schema)
    if not schema:
        poly = evaluate_node(body)
        return FunctionSpec(FamilyKind.CONCRETE, polynomial=poly, ambient=poly.ambient_dim, source=src)

    spec = FunctionSpec(FamilyKind.SCHEMA, body=body, source=src)
    try:
        spec.family().check_coherence(COHERENCE_LEVELS)
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(f"schema term must vanish at x_i = 0 ({exc})", first.line, first.column) from exc
    return spec
