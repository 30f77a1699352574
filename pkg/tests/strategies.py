"""Shared hypothesis strategies: small exact polynomials and integer points."""
from __future__ import annotations

from hypothesis import strategies as st

from polyvariety.algebra.group import GroupElement, Measure
from polyvariety.algebra.polyexpr import PolyExpr

coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def monomials(draw, max_vars: int = 3, max_degree: int = 3):
    degree = draw(st.integers(min_value=0, max_value=max_degree))
    exponents = {}
    for _ in range(degree):
        index = draw(st.integers(min_value=0, max_value=max_vars - 1))
        exponents[index] = exponents.get(index, 0) + 1
    return exponents


@st.composite
def polynomials(draw, max_vars: int = 3, max_degree: int = 3, max_terms: int = 4):
    total = PolyExpr.zero()
    for _ in range(draw(st.integers(min_value=0, max_value=max_terms))):
        coeff = draw(coefficients)
        total = total + PolyExpr.monomial(draw(monomials(max_vars, max_degree)), coeff)
    return total


def nonzero_polynomials(max_vars: int = 3, max_degree: int = 3, max_terms: int = 4):
    return polynomials(max_vars, max_degree, max_terms).filter(lambda p: not p.is_zero)


@st.composite
def points(draw, dim: int = 3, bound: int = 4):
    values = draw(st.lists(st.integers(min_value=-bound, max_value=bound), min_size=dim, max_size=dim))
    return GroupElement.from_dense(values)



@st.composite
def measures(draw, dim: int = 2, bound: int = 2, max_atoms: int = 3):
    atoms = {}
    for _ in range(draw(st.integers(min_value=0, max_value=max_atoms))):
        point = draw(points(dim, bound))
        atoms[point] = atoms.get(point, 0) + draw(coefficients)
    return Measure(atoms)


@st.composite
def generator_columns(draw, dim: int = 3, max_columns: int = 3, bound: int = 3):
    count = draw(st.integers(min_value=1, max_value=max_columns))
    return [
        draw(st.lists(st.integers(min_value=-bound, max_value=bound), min_size=dim, max_size=dim))
        for _ in range(count)
    ]
