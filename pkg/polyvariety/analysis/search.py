"""Seeded, nested subgroup schedules and lower-bound estimates of ``d_f(r)``.

A schedule cell ``(r, level)`` holds the coordinate subgroups of size ``r``
whose largest coordinate is ``level - 1`` plus ``random_candidates`` integer
generator matrices of shape ``level x r``. The rank-``r`` schedule at level
``L`` is the union of all cells ``(r', l)`` with ``r' <= r`` and ``l <= L``,
so a rank-``(r-1)`` member reappears with a zero generator appended and
estimates are nondecreasing in both ``r`` and ``L``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..algebra.group import Subgroup, restrict
from .family import FunctionFamily
from .variety import VarietyReport, variety_report

logger = logging.getLogger(__name__)


@dataclass
class ScheduleBudget:
    """Search budget for one ``d_f`` estimate."""

    max_level: int = 6
    random_candidates: int = 6
    entry_bound: int = 3
    seed: int = 7
    max_subgroups: int = 2000

    def __post_init__(self):
        for name in ("max_level", "random_candidates", "entry_bound", "max_subgroups"):
            if getattr(self, name) <= 0:
                raise ValueError(f"budget must be positive: {name}={getattr(self, name)}")

    @property
    def schedule_id(self) -> str:
        return f"nested-c{self.random_candidates}-b{self.entry_bound}-s{self.seed}"

    def to_dict(self) -> dict:
        return {
            "max_level": self.max_level,
            "random_candidates": self.random_candidates,
            "entry_bound": self.entry_bound,
            "seed": self.seed,
            "max_subgroups": self.max_subgroups,
        }


@dataclass(frozen=True)
class DfEstimate:
    """Certified lower bound ``value <= d_f(r)`` realized by ``witness``."""

    r: int
    value: int
    witness: Subgroup
    schedule_id: str
    exhausted_budget: bool
    level: int
    evaluated: int
    additive_dim: int
    lower_bound: bool = True

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "value": self.value,
            "lower_bound": self.lower_bound,
            "witness": self.witness.to_dict(),
            "schedule_id": self.schedule_id,
            "exhausted_budget": self.exhausted_budget,
            "level": self.level,
            "evaluated": self.evaluated,
            "additive_dim": self.additive_dim,
        }


class DfSearch:
    """Runs nested schedules for one family, caching variety reports by Hermite form.

    The restriction of ``f_L`` to a subgroup generated inside ℤ^l equals the
    restriction of ``f_l`` (coherence), so a cached report is valid at every
    level.
    """

    def __init__(self, family: FunctionFamily, budget: Optional[ScheduleBudget] = None):
        self.family = family
        self.budget = budget or ScheduleBudget()
        self._cells: Dict[Tuple[int, int], List[Subgroup]] = {}
        self._reports: Dict[tuple, VarietyReport] = {}

    def level_for(self, level: Optional[int] = None) -> int:
        if not self.family.is_schema:
            return self.family.ambient
        return self.budget.max_level if level is None else level

    def cell(self, r: int, level: int) -> List[Subgroup]:
        """New rank-``r`` candidates introduced at ``level`` (generators live in ℤ^level)."""
        key = (r, level)
        if key in self._cells:
            return self._cells[key]
        members: List[Subgroup] = []
        if r == 0:
            members.append(Subgroup.trivial(level))
        elif r <= level:
            for rest in combinations(range(level - 1), r - 1):
                members.append(Subgroup.coordinate(rest + (level - 1,), level))
        if r > 0:
            bound = self.budget.entry_bound
            rng = np.random.default_rng([self.budget.seed, r, level])
            draws = rng.integers(-bound, bound + 1, size=(self.budget.random_candidates, level, r))
            for matrix in draws:
                columns = [[int(matrix[i, j]) for i in range(level)] for j in range(r)]
                members.append(Subgroup.from_columns(columns, level))
        self._cells[key] = members
        return members

    def members(self, r: int, level: int) -> Tuple[List[Subgroup], bool]:
        """Deduplicated schedule for rank ``<= r`` at ``level``; flag set when truncated."""
        seen = set()
        out: List[Subgroup] = []
        truncated = False
        for rank in range(0, r + 1):
            for l in range(0 if rank == 0 else 1, level + 1):
                if rank == 0 and l != level:
                    continue
                for subgroup in self.cell(rank, l):
                    key = subgroup.canonical_key
                    if key in seen:
                        continue
                    if len(out) >= self.budget.max_subgroups:
                        truncated = True
                        break
                    seen.add(key)
                    out.append(subgroup)
        return out, truncated

    def report(self, subgroup: Subgroup) -> VarietyReport:
        key = subgroup.canonical_key
        if key not in self._reports:
            n = subgroup.ambient_dim
            f_n = self.family.materialize(n)
            self._reports[key] = variety_report(restrict(f_n, subgroup), subgroup)
        return self._reports[key]

    def estimate(self, r: int, level: Optional[int] = None) -> DfEstimate:
        if r < 0:
            raise ValueError("rank must be nonnegative")
        level = self.level_for(level)
        members, truncated = self.members(r, level)
        best: Optional[VarietyReport] = None
        for subgroup in members:
            candidate = self.report(subgroup)
            if best is None or candidate.dimension > best.dimension or (
                candidate.dimension == best.dimension
                and subgroup.witness_key() < best.subgroup.witness_key()
            ):
                best = candidate
        assert best is not None
        if truncated:
            logger.warning("schedule for r=%d at level %d truncated at %d subgroups", r, level, len(members))
        logger.debug("d_f(%d) >= %d at level %d over %d subgroups", r, best.dimension, level, len(members))
        return DfEstimate(
            r=r,
            value=best.dimension,
            witness=best.subgroup.padded(level),
            schedule_id=self.budget.schedule_id,
            exhausted_budget=truncated,
            level=level,
            evaluated=len(members),
            additive_dim=best.additive_dim,
        )


def d_f_estimate(fam: FunctionFamily, r: int, budget: Optional[ScheduleBudget] = None) -> DfEstimate:
    """Largest ``dim τ(f|_H)`` over the schedule of subgroups with rank at most ``r``."""
    return DfSearch(fam, budget).estimate(r)
