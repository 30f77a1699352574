"""Exact linear algebra over QQ and ZZ backed by sympy's DomainMatrix.

Polynomials are compared through their coefficient vectors on a shared,
graded-lex ordered monomial index.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form

from .polyexpr import Monomial, PolyExpr, grlex_key


def _to_fraction(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def _qq_matrix(rows: Sequence[Sequence[Fraction]], ncols: int) -> DomainMatrix:
    entries = [[QQ(int(c.numerator), int(c.denominator)) for c in row] for row in rows]
    return DomainMatrix(entries, (len(rows), ncols), QQ)


def monomial_index(polys: Sequence[PolyExpr]) -> List[Monomial]:
    return sorted({mono for p in polys for mono in p.terms}, key=grlex_key)


def coefficient_rows(
    polys: Sequence[PolyExpr], monomials: Optional[Sequence[Monomial]] = None
) -> Tuple[List[Monomial], List[List[Fraction]]]:
    """One row per polynomial, one column per monomial."""
    columns = list(monomials) if monomials is not None else monomial_index(polys)
    rows = [[p.coefficient(m) for m in columns] for p in polys]
    return columns, rows


def rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> Tuple[List[List[Fraction]], Tuple[int, ...]]:
    """Reduced row echelon form and pivot columns."""
    if not rows or ncols == 0:
        return [list(row) for row in rows], ()
    reduced, pivots = _qq_matrix(rows, ncols).rref()
    return [[_to_fraction(v) for v in row] for row in reduced.to_list()], tuple(pivots)


def matrix_rank(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    if not rows or ncols == 0:
        return 0
    return int(_qq_matrix(rows, ncols).rank())


def rank_of(polys: Sequence[PolyExpr]) -> int:
    """Dimension of the linear span of ``polys``."""
    columns, rows = coefficient_rows(polys)
    return matrix_rank(rows, len(columns))


def independent_subset(polys: Sequence[PolyExpr]) -> List[int]:
    """Indices of a maximal independent subfamily, greedily in input order."""
    columns, rows = coefficient_rows(polys)
    if not polys or not columns:
        return []
    transposed = [[rows[j][i] for j in range(len(polys))] for i in range(len(columns))]
    _, pivots = rref(transposed, len(polys))
    return list(pivots)


def kernel_basis(rows: Sequence[Sequence[Fraction]], ncols: int) -> List[List[Fraction]]:
    """Basis of ``{v : rows · v = 0}``, one vector per free column of the rref."""
    if ncols == 0:
        return []
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    reduced, pivots = rref(rows, ncols)
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        vector = [Fraction(0)] * ncols
        vector[free] = Fraction(1)
        for row_index, pivot in enumerate(pivots):
            vector[pivot] = -reduced[row_index][free]
        basis.append(vector)
    return basis


def solve_combination(polys: Sequence[PolyExpr], target: PolyExpr) -> Optional[List[Fraction]]:
    """Coefficients ``c`` with ``sum c_i polys_i == target``, or ``None`` if none exist."""
    columns = monomial_index(list(polys) + [target])
    if not columns:
        return [Fraction(0)] * len(polys)
    _, rows = coefficient_rows(polys, columns)
    augmented = [[rows[j][i] for j in range(len(polys))] + [target.coefficient(m)] for i, m in enumerate(columns)]
    reduced, pivots = rref(augmented, len(polys) + 1)
    if len(polys) in pivots:
        return None
    solution = [Fraction(0)] * len(polys)
    for row_index, pivot in enumerate(pivots):
        solution[pivot] = reduced[row_index][len(polys)]
    return solution


def integer_rank(rows: Sequence[Sequence[int]], ncols: int) -> int:
    """Exact rank of an integer matrix (fraction-free elimination over ZZ)."""
    if not rows or ncols == 0:
        return 0
    entries = [[ZZ(int(v)) for v in row] for row in rows]
    matrix = DomainMatrix(entries, (len(rows), ncols), ZZ)
    if hasattr(matrix, "rref_den"):
        _, _, pivots = matrix.rref_den()
        return len(pivots)
    return int(matrix.convert_to(QQ).rank())


def hermite_columns(rows: Sequence[Sequence[int]], ncols: int) -> List[List[int]]:
    """Nonzero columns of the column-style Hermite normal form of an integer matrix."""
    if not rows or ncols == 0 or all(v == 0 for row in rows for v in row):
        return []
    entries = [[ZZ(int(v)) for v in row] for row in rows]
    form = hermite_normal_form(DomainMatrix(entries, (len(rows), ncols), ZZ))
    values = [[int(v) for v in row] for row in form.to_list()]
    width = len(values[0]) if values else 0
    return [[values[i][j] for i in range(len(values))] for j in range(width)]
