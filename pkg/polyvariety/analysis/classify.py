"""Budgeted trichotomy: polynomial, fake polynomial, or not a generalized polynomial.

Verdicts read growth patterns of ``d_f(r)`` lower bounds across materialization
levels and ranks. Patterns that match none of the three shapes within the
budget give ``Inconclusive``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional

from ..algebra.group import GroupElement, restrict
from ..algebra.polyexpr import PolyExpr
from .family import FunctionFamily
from .search import DfEstimate, DfSearch, ScheduleBudget
from .taylor import taylor_generators
from .variety import difference_chain, parameter_namer

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    POLYNOMIAL = "Polynomial"
    FAKE_POLYNOMIAL = "FakePolynomial"
    NOT_GENERALIZED = "NotGeneralizedPolynomial"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class ClassifyBudget:
    """Levels, ranks, schedule size and stabilization cutoffs for ``classify``."""

    min_level: int = 3
    max_level: int = 8
    max_rank: int = 3
    random_candidates: int = 4
    entry_bound: int = 3
    seed: int = 7
    stable_levels: int = 3
    stable_ranks: int = 2
    growth_rank_limit: int = 2
    max_subgroups: int = 2000

    def __post_init__(self):
        for name in (
            "min_level", "max_level", "max_rank", "random_candidates", "entry_bound",
            "stable_levels", "stable_ranks", "growth_rank_limit", "max_subgroups",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"budget must be positive: {name}={getattr(self, name)}")
        if self.min_level > self.max_level:
            raise ValueError(f"min_level {self.min_level} exceeds max_level {self.max_level}")

    def schedule(self) -> ScheduleBudget:
        return ScheduleBudget(
            max_level=self.max_level,
            random_candidates=self.random_candidates,
            entry_bound=self.entry_bound,
            seed=self.seed,
            max_subgroups=self.max_subgroups,
        )

    @property
    def schedule_id(self) -> str:
        return self.schedule().schedule_id

    def to_dict(self) -> dict:
        return {
            "min_level": self.min_level,
            "max_level": self.max_level,
            "max_rank": self.max_rank,
            "random_candidates": self.random_candidates,
            "entry_bound": self.entry_bound,
            "seed": self.seed,
            "stable_levels": self.stable_levels,
            "stable_ranks": self.stable_ranks,
            "growth_rank_limit": self.growth_rank_limit,
            "max_subgroups": self.max_subgroups,
        }


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    reason: str
    table: Dict[int, List[DfEstimate]]
    certificate: dict = field(default_factory=dict)
    schedule_id: str = ""

    def witnesses(self) -> List[dict]:
        seen = []
        for r in sorted(self.table):
            for estimate in self.table[r]:
                entry = {"r": r, "level": estimate.level, "matrix": estimate.witness.to_dict()["generators"]}
                if entry not in seen:
                    seen.append(entry)
        return seen

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "reason": self.reason,
            "table": {
                str(r): [{"level": e.level, "value": e.value, "additive_dim": e.additive_dim} for e in row]
                for r, row in sorted(self.table.items())
            },
            "certificate": self.certificate,
            "schedule_id": self.schedule_id,
        }


def _strictly_increasing(values: List[int]) -> bool:
    return all(a < b for a, b in zip(values, values[1:]))


def _witness_restriction(fam: FunctionFamily, estimate: DfEstimate) -> PolyExpr:
    return restrict(fam.materialize(estimate.level), estimate.witness)


def classify(fam: FunctionFamily, budget: Optional[ClassifyBudget] = None) -> Classification:
    budget = budget or ClassifyBudget()
    search = DfSearch(fam, budget.schedule())
    if fam.is_schema:
        levels = list(range(budget.min_level, budget.max_level + 1))
        max_rank = budget.max_rank
    else:
        # subgroups of Z^n have rank <= n, so d_f is constant from r = n on
        levels = [fam.ambient]
        max_rank = max(budget.max_rank, fam.ambient + budget.stable_ranks - 1)
    table: Dict[int, List[DfEstimate]] = {}

    def row(r: int) -> List[DfEstimate]:
        if r not in table:
            table[r] = [search.estimate(r, level) for level in levels]
            logger.debug("d_f(%d) row: %s", r, [e.value for e in table[r]])
        return table[r]

    def conclude(verdict: Verdict, reason: str, certificate: Optional[dict] = None) -> Classification:
        logger.info("classified %s as %s: %s", fam.label, verdict.value, reason)
        return Classification(verdict, reason, dict(table), certificate or {}, budget.schedule_id)

    window = budget.stable_levels
    for r in range(1, min(budget.growth_rank_limit, max_rank) + 1):
        values = [e.value for e in row(r)]
        if fam.is_schema and len(values) >= window and _strictly_increasing(values[-window:]):
            last = table[r][-1]
            chain = difference_chain(_witness_restriction(fam, last), GroupElement.unit(0))
            return conclude(
                Verdict.NOT_GENERALIZED,
                f"rank-{r} estimates grow strictly across levels {levels[-window]}..{levels[-1]}",
                {
                    "rank": r,
                    "row": [e.to_dict() for e in table[r]],
                    "difference_chain": [g.render(parameter_namer) for g in chain],
                    "chain_length": len(chain),
                },
            )

    stabilized: List[DfEstimate] = []
    for r in range(1, max_rank + 1):
        estimates = row(r)
        if fam.is_schema:
            tail = [e.value for e in estimates[-window:]]
            if len(estimates) < window or len(set(tail)) != 1:
                return conclude(Verdict.INCONCLUSIVE, f"rank-{r} estimates do not stabilize across levels")
        stabilized.append(estimates[-1])

    values = [e.value for e in stabilized]
    tail = values[-budget.stable_ranks:]
    if len(values) >= budget.stable_ranks and len(set(tail)) == 1:
        witness = stabilized[-1]
        q = _witness_restriction(fam, witness)
        params = [PolyExpr.variable(j) for j in range(len(witness.witness.basis))]
        taylor = taylor_generators(q, params)
        if taylor.rank != witness.value:
            return conclude(Verdict.INCONCLUSIVE, "Taylor generators disagree with the stable estimate")
        return conclude(
            Verdict.POLYNOMIAL,
            f"estimates stable at {witness.value} across levels and ranks {max_rank - len(tail) + 1}..{max_rank}",
            {
                "stable_value": witness.value,
                "witness": witness.to_dict(),
                "restriction": q.render(parameter_namer),
                "taylor_generators": [g.render(parameter_namer) for g in taylor.generators],
                "taylor_rank": taylor.rank,
                "taylor_bound": taylor.bound,
            },
        )

    additive = [e.additive_dim for e in stabilized]
    if _strictly_increasing(values) and _strictly_increasing(additive):
        return conclude(
            Verdict.FAKE_POLYNOMIAL,
            f"stabilized estimates grow strictly in r = 1..{max_rank} together with additive dimensions",
            {
                "stabilized": {str(e.r): e.value for e in stabilized},
                "additive_dims": {str(e.r): e.additive_dim for e in stabilized},
                "witnesses": {str(e.r): e.witness.to_dict() for e in stabilized},
            },
        )
    return conclude(Verdict.INCONCLUSIVE, "stabilized estimates neither settle nor grow within the budget")
