"""Exact calculus and classification of polynomial functions on ℤⁿ and ℤ_ω."""
from ._version import __version__
from .algebra.group import GroupElement, Measure, Subgroup, hom_dimension
from .algebra.polyexpr import PolyExpr
from .analysis.classify import ClassifyBudget, Verdict, classify
from .analysis.family import FunctionFamily
from .analysis.search import DfEstimate, ScheduleBudget, d_f_estimate
from .analysis.variety import variety_dim
from .dsl.parser import FunctionSpec, ParseError, parse_function
from .pipeline import EngineConfig, VarietyEngine

__all__ = [
    "__version__",
    "ClassifyBudget",
    "DfEstimate",
    "EngineConfig",
    "FunctionFamily",
    "FunctionSpec",
    "GroupElement",
    "Measure",
    "ParseError",
    "PolyExpr",
    "ScheduleBudget",
    "Subgroup",
    "VarietyEngine",
    "Verdict",
    "classify",
    "d_f_estimate",
    "hom_dimension",
    "parse_function",
    "variety_dim",
]
