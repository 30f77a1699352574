"""Symbolic Fréchet functional equation tests and difference-based degree.

Both forms are decided as polynomial identities. The point variable ``x`` sits
in block 0 and each symbolic increment ``y_j`` in block ``j`` of width
``stride`` (variable ``j * stride + v`` is coordinate ``v`` of block ``j``).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union

from ..algebra.polyexpr import PolyExpr

logger = logging.getLogger(__name__)

EXCEEDS_CAP = "exceeds cap"


def _stride(f: PolyExpr) -> int:
    return max(f.ambient_dim, 1)


def symbolic_difference(g: PolyExpr, block: int, stride: int) -> PolyExpr:
    """``Δ_y * g`` for a symbolic increment held in ``block``: ``g(x + y) - g(x)``."""
    mapping = {
        v: PolyExpr.variable(v) + PolyExpr.variable(block * stride + v)
        for v in g.variables
        if v < stride
    }
    if not mapping:
        return PolyExpr.zero()
    return g.substitute(mapping) - g


def _annihilated(f: PolyExpr, blocks: List[int]) -> bool:
    stride = _stride(f)
    g = f
    for block in blocks:
        if g.is_zero:
            return True
        g = symbolic_difference(g, block, stride)
    return g.is_zero


def frechet_general_test(f: PolyExpr, n: int) -> bool:
    """``Δ_{y1,...,y_{n+1}} * f == 0`` identically in ``x`` and independent ``y_j``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _annihilated(f, list(range(1, n + 2)))


def frechet_equal_test(f: PolyExpr, n: int) -> bool:
    """``Δ_y^{n+1} * f == 0`` identically in ``x`` and one symbolic ``y``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _annihilated(f, [1] * (n + 1))


@dataclass(frozen=True)
class DjokovicReport:
    """Per-n agreement of the two Fréchet forms."""

    n_max: int
    pairs: List[Tuple[int, bool, bool]]
    disagreements: List[int] = field(default_factory=list)
    flip_point: Optional[int] = None

    @property
    def agree(self) -> bool:
        return not self.disagreements

    def to_dict(self) -> dict:
        return {
            "n_max": self.n_max,
            "pairs": [{"n": n, "general": g, "equal": e} for n, g, e in self.pairs],
            "agree": self.agree,
            "disagreements": self.disagreements,
            "flip_point": self.flip_point,
        }


def djokovic_consistency(f: PolyExpr, n_max: Optional[int] = None) -> DjokovicReport:
    """Record both tests for ``n = 0..n_max`` (default ``total_degree + 2``)."""
    if n_max is None:
        n_max = (f.total_degree or 0) + 2
    pairs = []
    disagreements = []
    flip: Optional[int] = None
    for n in range(n_max + 1):
        general = frechet_general_test(f, n)
        equal = frechet_equal_test(f, n)
        pairs.append((n, general, equal))
        if general != equal:
            logger.warning("Fréchet forms disagree at n=%d for %s", n, f)
            disagreements.append(n)
        if flip is None and general and equal:
            flip = n
    return DjokovicReport(n_max=n_max, pairs=pairs, disagreements=disagreements, flip_point=flip)


def degree_by_differences(f: PolyExpr, cap: int) -> Union[int, str, None]:
    """Smallest ``n <= cap`` with ``Δ_y^{n+1} * f == 0``; ``None`` for the zero polynomial."""
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    if f.is_zero:
        return None
    stride = _stride(f)
    g = f
    for n in range(cap + 1):
        g = symbolic_difference(g, 1, stride)
        if g.is_zero:
            degree = f.total_degree
            if degree is not None and degree <= cap and degree != n:
                raise RuntimeError(f"difference degree {n} disagrees with total degree {degree}")
            return n
    return EXCEEDS_CAP
