"""Taylor generators ``∂^α P(a_1(x), ..., a_k(x))`` of the variety of a composed polynomial."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import List, Sequence, Tuple

from ..algebra.linalg import rank_of
from ..algebra.polyexpr import PolyExpr, make_monomial
from .decompose import monomial_independence_check
from .variety import translate_span_basis


@dataclass(frozen=True)
class TaylorReport:
    composite: PolyExpr
    generators: List[PolyExpr]
    multi_indices: List[Tuple[int, ...]]
    rank: int
    variety_dim: int
    bound: int
    spans_variety: bool
    within_bound: bool

    def to_dict(self) -> dict:
        return {
            "composite": self.composite.render(),
            "generators": [g.render() for g in self.generators],
            "multi_indices": [list(alpha) for alpha in self.multi_indices],
            "count": len(self.generators),
            "rank": self.rank,
            "variety_dim": self.variety_dim,
            "bound": self.bound,
            "spans_variety": self.spans_variety,
            "within_bound": self.within_bound,
        }


def _multi_indices(k: int, degree: int) -> List[Tuple[int, ...]]:
    alphas = [alpha for alpha in product(range(degree + 1), repeat=k) if sum(alpha) <= degree]
    return sorted(alphas, key=lambda alpha: (sum(alpha), tuple(-a for a in alpha)))


def taylor_generators(P: PolyExpr, additive_list: Sequence[PolyExpr]) -> TaylorReport:
    """Derivatives of ``P`` up to order ``deg P`` composed with independent additive functions.

    Raises ``ValueError`` for a dependent or non-additive list and ``RuntimeError``
    if the generators fail to span the variety of ``P ∘ a``.
    """
    k = len(additive_list)
    if P.ambient_dim > k:
        raise ValueError(f"P uses {P.ambient_dim} variables but only {k} additive functions were given")
    degree = P.total_degree or 0
    if not monomial_independence_check(additive_list, max(degree, 1)):
        raise ValueError("additive functions are dependent: their monomials up to deg P are not independent")

    def compose(g: PolyExpr) -> PolyExpr:
        return g.substitute({j: additive_list[j] for j in g.variables})

    composite = compose(P)
    generators: List[PolyExpr] = []
    indices: List[Tuple[int, ...]] = []
    for alpha in _multi_indices(k, degree):
        g = compose(P.partial(make_monomial(enumerate(alpha))))
        if g.is_zero or g in generators:
            continue
        generators.append(g)
        indices.append(alpha)

    span = translate_span_basis(composite)
    rank = rank_of(generators)
    spans = rank == len(span) and rank_of(generators + span) == rank
    if not spans:
        raise RuntimeError(f"Taylor generators of {composite} do not span its variety")
    f_degree = composite.total_degree or 0
    bound = (f_degree + 1) ** k
    return TaylorReport(
        composite=composite,
        generators=generators,
        multi_indices=indices,
        rank=rank,
        variety_dim=len(span),
        bound=bound,
        spans_variety=spans,
        within_bound=len(generators) <= bound,
    )
