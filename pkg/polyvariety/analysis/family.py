"""Coherent families ``{f_n : ℤⁿ -> ℚ}`` standing for one function on ℤ_ω or ℤⁿ."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Iterable, Optional, Union

from ..algebra.polyexpr import PolyExpr


class FamilyKind(str, Enum):
    CONCRETE = "concrete"
    SCHEMA = "schema"


@dataclass(frozen=True)
class FunctionFamily:
    """A concrete polynomial on ℤⁿ, or a per-coordinate schema ``sum_i p_i(x_i)`` on ℤ_ω.

    ``rule(i)`` returns the schema term for the 1-based coordinate ``i`` as a
    polynomial in variable ``i - 1``; it must vanish at the origin so that
    ``f_{n+1}`` restricted to ℤⁿ equals ``f_n``.
    """

    kind: FamilyKind
    label: str
    polynomial: Optional[PolyExpr] = None
    ambient: int = 0
    rule: Optional[Callable[[int], PolyExpr]] = field(default=None, compare=False)
    _levels: Dict[int, PolyExpr] = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def concrete(cls, polynomial: PolyExpr, ambient: Optional[int] = None, label: Optional[str] = None) -> "FunctionFamily":
        n = polynomial.ambient_dim if ambient is None else ambient
        if n < polynomial.ambient_dim:
            raise ValueError(f"polynomial uses {polynomial.ambient_dim} coordinates but ambient is Z^{n}")
        return cls(FamilyKind.CONCRETE, label or polynomial.render(), polynomial=polynomial, ambient=n)

    @classmethod
    def schema(cls, rule: Callable[[int], PolyExpr], label: str) -> "FunctionFamily":
        return cls(FamilyKind.SCHEMA, label, rule=rule)

    @property
    def is_schema(self) -> bool:
        return self.kind is FamilyKind.SCHEMA

    @property
    def hom_dimension(self) -> Union[int, float]:
        return math.inf if self.is_schema else self.ambient

    def term(self, i: int) -> PolyExpr:
        if self.rule is None:
            raise ValueError("concrete families have no per-coordinate rule")
        poly = self.rule(i)
        stray = [v for v in poly.variables if v != i - 1]
        if stray:
            raise ValueError(f"schema term for coordinate {i} uses other coordinates: {poly}")
        return poly

    def materialize(self, n: int) -> PolyExpr:
        """``f_n`` on ℤⁿ: the schema partial sum, or the concrete polynomial restricted to ℤⁿ."""
        if n < 0:
            raise ValueError("materialization level must be nonnegative")
        if n in self._levels:
            return self._levels[n]
        if self.is_schema:
            start = max((level for level in self._levels if level < n), default=0)
            poly = self._levels.get(start, PolyExpr.zero())
            for i in range(start + 1, n + 1):
                poly = poly + self.term(i)
                self._levels[i] = poly
            return poly
        assert self.polynomial is not None
        dropped = {v: PolyExpr.zero() for v in self.polynomial.variables if v >= n}
        poly = self.polynomial.substitute(dropped) if dropped else self.polynomial
        self._levels[n] = poly
        return poly

    def check_coherence(self, levels: Iterable[int]) -> None:
        """Raise ``ValueError`` unless ``f_{n+1}`` restricted to ℤⁿ equals ``f_n`` for each level."""
        for n in levels:
            upper = self.materialize(n + 1)
            restricted = upper.substitute({n: PolyExpr.zero()}) if n in upper.variables else upper
            if restricted != self.materialize(n):
                raise ValueError(
                    f"family {self.label!r} is incoherent at level {n}: "
                    f"f_{n + 1} restricted to Z^{n} is {restricted}, expected {self.materialize(n)}"
                )

    def to_dict(self) -> dict:
        data = {"kind": self.kind.value, "label": self.label}
        if not self.is_schema:
            data["ambient"] = self.ambient
        return data
