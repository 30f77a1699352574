"""Polarization into symmetric multiadditive forms and additive slices.

A form of arity k lives on k blocks of coordinate variables; block j holds
variables ``j * stride + v`` for ``v < stride``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import factorial
from typing import Dict, List, Optional, Sequence

from ..algebra.group import GroupElement, Measure, apply_measure, iterated_difference
from ..algebra.linalg import rank_of
from ..algebra.polyexpr import PolyExpr

logger = logging.getLogger(__name__)


def block_namer(stride: int):
    """Names block variables ``y<block>_<coordinate>`` (both 1-based)."""

    def name(index: int) -> str:
        block, coordinate = divmod(index, stride)
        return f"y{block + 1}_{coordinate + 1}"

    return name


@dataclass(frozen=True)
class MultiadditiveForm:
    """A k-ary form stored as a polynomial over k disjoint variable blocks."""

    arity: int
    stride: int
    body: PolyExpr

    def var(self, block: int, coordinate: int) -> int:
        return block * self.stride + coordinate

    def evaluate(self, vectors: Sequence[Optional[GroupElement]]) -> PolyExpr:
        """Substitute concrete arguments; a ``None`` slot becomes the free point ``x``."""
        if len(vectors) != self.arity:
            raise ValueError(f"form of arity {self.arity} needs {self.arity} arguments, got {len(vectors)}")
        mapping: Dict[int, PolyExpr] = {}
        for block, vector in enumerate(vectors):
            for v in range(self.stride):
                if vector is None:
                    mapping[self.var(block, v)] = PolyExpr.variable(v)
                else:
                    mapping[self.var(block, v)] = PolyExpr.constant(vector[v])
        return self.body.substitute(mapping)

    def render(self) -> str:
        return self.body.render(block_namer(self.stride))

    def to_dict(self) -> dict:
        return {"arity": self.arity, "stride": self.stride, "body": self.render()}


@dataclass(frozen=True)
class Polarization:
    """``f = C + sum_k A_k(x, ..., x)``."""

    forms: List[MultiadditiveForm]
    constant: Fraction

    def reassemble(self) -> PolyExpr:
        total = PolyExpr.constant(self.constant)
        for form in self.forms:
            total = total + diagonalize(form)
        return total

    def to_dict(self) -> dict:
        return {
            "constant": str(self.constant),
            "forms": [form.to_dict() for form in self.forms],
        }


def polarize_component(f_k: PolyExpr, k: int, stride: int) -> MultiadditiveForm:
    """``A_k(y1..yk) = (1/k!) Δ_{y1..yk} * f_k`` at ``x = o``, as a signed subset sum."""
    if k < 1:
        raise ValueError("arity must be at least 1")
    if f_k.ambient_dim > stride:
        raise ValueError(f"stride {stride} is smaller than the ambient dimension {f_k.ambient_dim}")
    body = PolyExpr.zero()
    if not f_k.is_zero:
        for size in range(1, k + 1):
            sign = -1 if (k - size) % 2 else 1
            for subset in combinations(range(k), size):
                mapping = {
                    v: sum((PolyExpr.variable(j * stride + v) for j in subset), PolyExpr.zero())
                    for v in f_k.variables
                }
                body = body + f_k.substitute(mapping).scale(sign)
        body = body.scale(Fraction(1, factorial(k)))
    return MultiadditiveForm(arity=k, stride=stride, body=body)


def polarize(f: PolyExpr, stride: Optional[int] = None) -> Polarization:
    """Unique decomposition into symmetric k-additive forms plus a constant."""
    stride = stride if stride is not None else max(f.ambient_dim, 1)
    degree = f.total_degree
    if degree is None:
        return Polarization(forms=[], constant=Fraction(0))
    forms = [polarize_component(f.homogeneous_part(k), k, stride) for k in range(1, degree + 1)]
    return Polarization(forms=forms, constant=f.constant_term)


def diagonalize(form: MultiadditiveForm) -> PolyExpr:
    """``x -> A(x, ..., x)``."""
    mapping = {
        form.var(block, v): PolyExpr.variable(v)
        for block in range(form.arity)
        for v in range(form.stride)
    }
    return form.body.substitute(mapping)


def verify_multiadditive_symmetric(form: MultiadditiveForm) -> bool:
    """Additivity in every block and invariance under adjacent block swaps, symbolically."""
    k, s = form.arity, form.stride
    if any(index >= k * s for index in form.body.variables):
        return False
    fresh = k
    for block in range(k):
        split = {
            form.var(block, v): PolyExpr.variable(form.var(block, v)) + PolyExpr.variable(form.var(fresh, v))
            for v in range(s)
        }
        moved = {form.var(block, v): form.var(fresh, v) for v in range(s)}
        defect = form.body.substitute(split) - form.body - form.body.rename(moved)
        if not defect.is_zero:
            return False
    for block in range(k - 1):
        swap = {}
        for v in range(s):
            swap[form.var(block, v)] = form.var(block + 1, v)
            swap[form.var(block + 1, v)] = form.var(block, v)
        if form.body.rename(swap) != form.body:
            return False
    return True


# ----------------------------------------------------------------------
# Additive slices
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class AdditiveSlice:
    """``x -> A_n(x, y2, ..., yn)`` together with a measure producing it from ``f``."""

    additive: PolyExpr
    witness: Measure
    increments: List[GroupElement]

    def to_dict(self) -> dict:
        return {
            "additive": self.additive.render(),
            "increments": [y.to_dict() for y in self.increments],
            "witness": self.witness.to_dict(),
        }


def _candidate_points(variables: Sequence[int]):
    for v in variables:
        yield GroupElement.unit(v)
    yield GroupElement({v: 1 for v in variables})
    for a, b in combinations(variables, 2):
        yield GroupElement({a: 1, b: 1})
        yield GroupElement({a: 1, b: -1})
    yield GroupElement({v: position + 1 for position, v in enumerate(variables)})


def _nonvanishing_point(f_n: PolyExpr, degree: int) -> GroupElement:
    variables = f_n.variables
    for point in _candidate_points(variables):
        if f_n.evaluate(point):
            return point
    # a nonzero polynomial of degree d cannot vanish on a grid with d + 1 values per axis
    for values in product(range(degree + 1), repeat=len(variables)):
        point = GroupElement(dict(zip(variables, values)))
        if f_n.evaluate(point):
            return point
    raise RuntimeError("top homogeneous part vanishes on the whole search grid")


def top_additive_slice(f: PolyExpr, ys: Sequence[GroupElement]) -> AdditiveSlice:
    """Additive function ``x -> A_n(x, ys...)`` in τ(f) with its translate-combination witness."""
    degree = f.total_degree
    if degree is None or degree == 0:
        raise ValueError("top_additive_slice needs a nonconstant function")
    if len(ys) != degree - 1:
        raise ValueError(
            f"top_additive_slice needs exactly {degree - 1} increments for degree {degree}, got {len(ys)}"
        )
    stride = max([f.ambient_dim, 1] + [y.ambient_dim for y in ys])
    top = f.homogeneous_part(degree)
    form = polarize_component(top, degree, stride)
    additive = form.evaluate([None] + list(ys))

    # Δ_{y2..yn} * f = n! A_n(x, y2..yn) + c, and Δ_z^n * f = n! f_n(z)
    base = iterated_difference(list(ys)) if ys else Measure.identity()
    residue = apply_measure(base, f).constant_term
    witness = base
    if residue:
        z = _nonvanishing_point(top, degree)
        unit = iterated_difference([z] * degree).scale(Fraction(1, factorial(degree)) / top.evaluate(z))
        witness = witness - unit.scale(residue)
    witness = witness.scale(Fraction(1, factorial(degree)))
    if apply_measure(witness, f) != additive:
        raise RuntimeError("slice witness does not reproduce the additive slice")
    return AdditiveSlice(additive=additive, witness=witness, increments=list(ys))


def monomial_independence_check(additive_list: Sequence[PolyExpr], deg_cap: int) -> bool:
    """Whether the products ``a^alpha`` with ``|alpha| <= deg_cap`` are linearly independent."""
    if deg_cap < 0:
        raise ValueError("deg_cap must be nonnegative")
    for position, a in enumerate(additive_list):
        if not a.is_zero and not a.is_homogeneous(1):
            raise ValueError(f"entry {position + 1} ({a}) is not additive")
    k = len(additive_list)
    products = []
    for alpha in product(range(deg_cap + 1), repeat=k):
        if sum(alpha) > deg_cap:
            continue
        term = PolyExpr.constant(1)
        for a, exp in zip(additive_list, alpha):
            term = term * (a ** exp)
        products.append(term)
    independent = rank_of(products) == len(products)
    logger.debug("monomial independence: %d products, independent=%s", len(products), independent)
    return independent
