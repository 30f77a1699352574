"""Finite-dimensional varieties: the linear span of all translates of a polynomial."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from typing import List, Optional, Sequence

from ..algebra.group import GroupElement, Measure, Subgroup, restrict, translate_measure
from ..algebra.linalg import coefficient_rows, independent_subset, kernel_basis, rref, solve_combination
from ..algebra.polyexpr import PolyExpr, monomial_degree, shift_expand
from .family import FunctionFamily

logger = logging.getLogger(__name__)


def parameter_namer(index: int) -> str:
    """Subgroup parameters are written ``t1, t2, ...``."""
    return f"t{index + 1}"


def translate_span_basis(q: PolyExpr) -> List[PolyExpr]:
    """A maximal independent subset of the Taylor family ``{∂^β q / β!}``.

    Its span equals the span of all translates of ``q``.
    """
    family = [h for _, h in shift_expand(q)]
    return [family[i] for i in independent_subset(family)]


def additive_subspace_basis(basis: Sequence[PolyExpr]) -> List[PolyExpr]:
    """Basis of the degree-1 homogeneous elements of ``span(basis)``, in reduced echelon form."""
    if not basis:
        return []
    columns, rows = coefficient_rows(basis)
    nonlinear = [i for i, mono in enumerate(columns) if monomial_degree(mono) != 1]
    linear = [mono for mono in columns if monomial_degree(mono) == 1]
    if not linear:
        return []
    constraints = [[rows[j][i] for j in range(len(basis))] for i in nonlinear]
    combinations = kernel_basis(constraints, len(basis))
    if not combinations:
        return []
    spanned = []
    for vector in combinations:
        g = PolyExpr.zero()
        for c, b in zip(vector, basis):
            if c:
                g = g + b.scale(c)
        spanned.append([g.coefficient(mono) for mono in linear])
    reduced, pivots = rref(spanned, len(linear))
    out = []
    for row in reduced[: len(pivots)]:
        out.append(PolyExpr({mono: c for mono, c in zip(linear, row) if c}))
    return out


@dataclass(frozen=True)
class VarietyReport:
    """``τ(f|_H)`` in the parameters ``t`` of the subgroup basis."""

    subgroup: Subgroup
    dimension: int
    basis: List[PolyExpr]
    additive_dim: int
    additive_basis: List[PolyExpr]

    def to_dict(self) -> dict:
        return {
            "subgroup": self.subgroup.to_dict(),
            "dimension": self.dimension,
            "basis": [b.render(parameter_namer) for b in self.basis],
            "additive_dim": self.additive_dim,
            "additive_basis": [a.render(parameter_namer) for a in self.additive_basis],
        }


def variety_report(q: PolyExpr, subgroup: Subgroup) -> VarietyReport:
    """Report for an already restricted polynomial ``q``."""
    basis = translate_span_basis(q)
    additive = additive_subspace_basis(basis)
    return VarietyReport(
        subgroup=subgroup,
        dimension=len(basis),
        basis=basis,
        additive_dim=len(additive),
        additive_basis=additive,
    )


def variety_dim(f: PolyExpr, subgroup: Subgroup) -> VarietyReport:
    if f.ambient_dim > subgroup.ambient_dim:
        raise ValueError(f"f uses coordinates outside Z^{subgroup.ambient_dim}")
    report = variety_report(restrict(f, subgroup), subgroup)
    logger.debug("variety of %s on rank-%d subgroup: dim %d", f, subgroup.rank, report.dimension)
    return report


def translate_combination(q: PolyExpr, target: PolyExpr, max_points: int = 4096) -> Optional[Measure]:
    """Measure ``nu`` with ``nu * q == target``, built from translates on the grid ``{0..deg q}^m``.

    ``None`` when ``target`` is not in the span of the translates of ``q``.
    """
    if q.is_zero:
        return Measure.zero() if target.is_zero else None
    variables = q.variables
    degree = q.total_degree or 0
    size = (degree + 1) ** len(variables)
    if size > max_points:
        raise ValueError(f"shift grid of {size} points exceeds max_points={max_points}")
    shifts = [
        GroupElement(dict(zip(variables, values)))
        for values in product(range(degree + 1), repeat=len(variables))
    ]
    translates = [q.translate(s) for s in shifts]
    solution = solve_combination(translates, target)
    if solution is None:
        return None
    nu = Measure.zero()
    for s, c in zip(shifts, solution):
        if c:
            nu = nu + translate_measure(s).scale(c)
    return nu


def difference_chain(q: PolyExpr, y: GroupElement) -> List[PolyExpr]:
    """``[q, Δ_y q, Δ_y² q, ...]`` up to the last nonzero member; degrees strictly decrease."""
    chain = []
    g = q
    while not g.is_zero:
        chain.append(g)
        if y.is_zero:
            break
        g = g.translate(y) - g
    return chain


@dataclass(frozen=True)
class DifferenceProfileRow:
    level: int
    difference: PolyExpr
    dimension: int

    def to_dict(self) -> dict:
        return {"level": self.level, "difference": self.difference.render(), "dimension": self.dimension}


def difference_profile(fam: FunctionFamily, y: GroupElement, levels: Sequence[int]) -> List[DifferenceProfileRow]:
    """Variety dimension of ``Δ_y * f_n`` on the whole of ℤⁿ for each level ``n``."""
    rows = []
    for n in levels:
        if y.ambient_dim > n:
            raise ValueError(f"increment {y.to_dict()} does not lie in Z^{n}")
        f_n = fam.materialize(n)
        delta = f_n.translate(y) - f_n
        report = variety_dim(delta, Subgroup.full(n))
        rows.append(DifferenceProfileRow(level=n, difference=delta, dimension=report.dimension))
    return rows

