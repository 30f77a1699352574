"""High-level orchestration: argument parsing, command dispatch and scenario files."""
from __future__ import annotations

import argparse
import json
import logging
import os
import shlex
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from ._version import __version__
from .algebra.group import GroupDescriptor, GroupElement, Subgroup, hom_dimension
from .algebra.polyexpr import PolyExpr
from .analysis.classify import ClassifyBudget, Verdict, classify
from .analysis.decompose import polarize, top_additive_slice, verify_multiadditive_symmetric
from .analysis.frechet import djokovic_consistency, degree_by_differences, frechet_equal_test, frechet_general_test
from .analysis.search import DfSearch, ScheduleBudget
from .analysis.taylor import taylor_generators
from .analysis.variety import difference_profile, variety_dim
from .dsl.parser import FunctionSpec, ParseError, parse_function

logger = logging.getLogger(__name__)

TOOL_NAME = "polyvariety"
SEED_ENV = "POLYVARIETY_SEED"
DEFAULT_SEED = 7
DEFAULT_SCHEMA_LEVEL = 3

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


class UsageError(ValueError):
    """Malformed invocation: unknown subcommand, bad flag value, malformed matrix."""


@dataclass
class EngineConfig:
    """Engine-wide defaults; the seed falls back to ``$POLYVARIETY_SEED`` and then 7."""

    seed: Optional[int] = None
    output_format: str = "json"

    def __post_init__(self):
        if self.seed is None:
            raw = os.getenv(SEED_ENV)
            try:
                self.seed = int(raw) if raw else DEFAULT_SEED
            except ValueError as exc:
                raise ValueError(f"{SEED_ENV} must be an integer, got {raw!r}") from exc
        if self.output_format not in ("json", "table"):
            raise ValueError(f"Unsupported output format: {self.output_format}")


@dataclass
class CommandReport:
    """One invocation and its outcome, serialized as a stable JSON object."""

    command: str
    argv: List[str]
    input: Optional[Dict[str, Any]] = None
    seed: Optional[int] = None
    schedule_id: Optional[str] = None
    result: Any = None
    witnesses: List[Any] = field(default_factory=list)
    exit_code: int = EXIT_OK
    error: Optional[Dict[str, Any]] = None

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "tool": TOOL_NAME,
            "version": __version__,
            "command": self.command,
            "argv": self.argv,
            "input": self.input,
            "seed": self.seed,
            "schedule_id": self.schedule_id,
            "result": self.result,
            "witnesses": self.witnesses,
            "exit_code": self.exit_code,
            "error": self.error,
        }


class _ArgumentParser(argparse.ArgumentParser):
    """Raises ``UsageError`` instead of exiting, so scenario files keep going."""

    def error(self, message: str):
        raise UsageError(message)


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError(f"budget must be positive, got {value}")
    return value


def _nonnegative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def _budget(text: str) -> Optional[int]:
    return None if text == "default" else _positive_int(text)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog=TOOL_NAME, description="Exact calculus and classification of polynomial functions on Z^n and Z_omega")
    parser.add_argument("--format", choices=["json", "table"], default=None, help="Output format (default json)")
    parser.add_argument("--output", type=Path, default=None, help="Write the report to this file instead of stdout")
    parser.add_argument("--verbose", action="store_true", help="Debug logging on stderr")
    commands = parser.add_subparsers(dest="command", parser_class=_ArgumentParser)

    def function_command(name: str, help_text: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument("function", help='Polynomial such as "x1^3 + x2^3" or schema such as "sum_i x_i^3"')
        return sub

    def level_flag(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--level", type=_positive_int, default=DEFAULT_SCHEMA_LEVEL, help="Materialization level for schemas")

    sub = function_command("degree", "Degree via iterated differences")
    sub.add_argument("--cap", type=_nonnegative_int, default=16)
    level_flag(sub)

    sub = function_command("frechet", "Frechet functional equation tests")
    sub.add_argument("--n", type=_nonnegative_int, required=True)
    sub.add_argument("--both-forms", action="store_true")
    sub.add_argument("--consistency", action="store_true", help="Compare both forms for n = 0..deg+2")
    level_flag(sub)

    sub = function_command("decompose", "Polarization into symmetric multiadditive forms")
    level_flag(sub)

    sub = function_command("variety-dim", "Dimension of the variety of the restriction to a subgroup")
    sub.add_argument("--subgroup", default=None, help='Generator columns as JSON, e.g. "[[1,0],[0,1]]"')
    level_flag(sub)

    sub = function_command("dfr", "Lower bound for d_f(r)")
    sub.add_argument("--r", type=_nonnegative_int, required=True)
    sub.add_argument("--levels", type=_positive_int, default=None, help="Highest materialization level")
    sub.add_argument("--budget", type=_budget, default=None, help="Random candidates per schedule cell, or 'default'")
    sub.add_argument("--seed", type=int, default=None)

    sub = function_command("classify", "Polynomial / fake polynomial / not generalized polynomial")
    sub.add_argument("--budget", type=_budget, default=None, help="Random candidates per schedule cell, or 'default'")
    sub.add_argument("--seed", type=int, default=None)

    sub = commands.add_parser("hom-dim", help="Dimension of Hom(G, Q)")
    sub.add_argument("group", help='"Z^n", "Z_omega", or a function whose domain is used')

    sub = commands.add_parser("taylor", help="Taylor generators of P composed with additive functions")
    sub.add_argument("--p", required=True, help="Polynomial P in x1..xk")
    sub.add_argument("--additive", required=True, help='Additive functions separated by ";", e.g. "x1; x2"')

    sub = function_command("slice", "Additive slice of the top multiadditive form")
    sub.add_argument("--ys", default="[]", help='Increments as JSON vectors, e.g. "[[1,0]]"')
    level_flag(sub)

    sub = function_command("difference", "Difference along y and its variety profile")
    sub.add_argument("--y", required=True, help='Increment as a JSON vector, e.g. "[1,1]"')
    sub.add_argument("--levels", default=None, help='Comma-separated levels for the profile, e.g. "2,3,4"')
    level_flag(sub)

    sub = commands.add_parser("scenario", help="Run a scenario file of invocations")
    sub.add_argument("path", type=Path)
    return parser


# ----------------------------------------------------------------------
# Argument decoding
# ----------------------------------------------------------------------

def _load_json(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed {what}: {exc.msg}") from exc


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def parse_vector(text: str) -> GroupElement:
    values = _load_json(text, "vector")
    if not isinstance(values, list) or not all(_is_int(v) for v in values):
        raise UsageError(f"malformed vector {text!r}: expected a JSON list of integers")
    return GroupElement.from_dense(values)


def parse_matrix(text: str) -> List[List[int]]:
    """A JSON list of integer columns of equal length."""
    columns = _load_json(text, "matrix")
    if not isinstance(columns, list) or not all(isinstance(c, list) for c in columns):
        raise UsageError(f"malformed matrix {text!r}: expected a JSON list of columns")
    if not all(_is_int(v) for c in columns for v in c):
        raise UsageError(f"malformed matrix {text!r}: entries must be integers")
    if len({len(c) for c in columns}) > 1:
        raise UsageError(f"malformed matrix {text!r}: columns differ in length")
    return columns


def _concrete(spec: FunctionSpec, level: int) -> PolyExpr:
    return spec.at_level(level)


# ----------------------------------------------------------------------
# Engine
# ----------------------------------------------------------------------

Handler = Callable[[argparse.Namespace, CommandReport], None]


class VarietyEngine:
    """Coordinates parsing, the analysis modules and report assembly."""

    def __init__(self, config: Optional[EngineConfig] = None) -> None:
        self.config = config or EngineConfig()
        self.parser = build_parser()
        self._handlers: Dict[str, Handler] = {
            "degree": self._degree,
            "frechet": self._frechet,
            "decompose": self._decompose,
            "variety-dim": self._variety_dim,
            "dfr": self._dfr,
            "classify": self._classify,
            "hom-dim": self._hom_dim,
            "taylor": self._taylor,
            "slice": self._slice,
            "difference": self._difference,
        }

    def parse_args(self, argv: Sequence[str]) -> argparse.Namespace:
        args = self.parser.parse_args(list(argv))
        if args.command is None:
            raise UsageError("missing subcommand")
        return args

    def run_command(self, argv: Sequence[str]) -> CommandReport:
        argv = list(argv)
        report = CommandReport(command=argv[0] if argv else "", argv=argv)
        try:
            args = self.parse_args(argv)
            report.command = args.command
            if args.command == "scenario":
                raise UsageError("scenario files cannot be nested inside run_command")
            self._handlers[args.command](args, report)
        except ParseError as exc:
            report.exit_code = EXIT_USAGE
            report.error = {"kind": "parse", **exc.to_dict()}
        except ValueError as exc:
            # UsageError and contract violations from the analysis layer
            report.exit_code = EXIT_USAGE
            report.error = {"kind": "usage", "message": str(exc)}
        if report.error:
            logger.warning("%s failed: %s", report.command or "<none>", report.error["message"])
        return report

    def run_scenario(self, path: Path) -> List[CommandReport]:
        """Execute each line of a scenario file; blank lines and ``#`` comments are skipped."""
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read scenario file {path}: {exc.strerror}") from exc
        reports = []
        for number, line in enumerate(text.splitlines(), start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            try:
                argv = shlex.split(stripped, comments=True)
            except ValueError as exc:
                raise UsageError(f"{path}:{number}: {exc}") from exc
            if argv and argv[0] == TOOL_NAME:
                argv = argv[1:]
            logger.debug("scenario line %d: %s", number, argv)
            reports.append(self.run_command(argv))
        return reports

    # ------------------------------------------------------------------
    # Subcommands

    def _function(self, args: argparse.Namespace, report: CommandReport) -> FunctionSpec:
        spec = parse_function(args.function)
        report.input = spec.to_dict()
        level = getattr(args, "level", None)
        if spec.is_schema and level is not None:
            report.input["level"] = level
        return spec

    def _degree(self, args, report):
        spec = self._function(args, report)
        degree = degree_by_differences(_concrete(spec, args.level), args.cap)
        report.result = {"degree": degree, "cap": args.cap}

    def _frechet(self, args, report):
        spec = self._function(args, report)
        f = _concrete(spec, args.level)
        result: Dict[str, Any] = {"n": args.n, "general": frechet_general_test(f, args.n)}
        if args.both_forms:
            result["equal"] = frechet_equal_test(f, args.n)
            result["agree"] = result["general"] == result["equal"]
        if args.consistency:
            result["consistency"] = djokovic_consistency(f).to_dict()
        report.result = result

    def _decompose(self, args, report):
        spec = self._function(args, report)
        f = _concrete(spec, args.level)
        polarization = polarize(f)
        result = polarization.to_dict()
        result["symmetric_multiadditive"] = all(verify_multiadditive_symmetric(form) for form in polarization.forms)
        result["reconstructs"] = polarization.reassemble() == f
        report.result = result

    def _variety_dim(self, args, report):
        spec = self._function(args, report)
        if args.subgroup is None:
            f = _concrete(spec, args.level)
            subgroup = Subgroup.full(max(f.ambient_dim, 1))
        else:
            columns = parse_matrix(args.subgroup)
            if spec.is_schema:
                # a subgroup of Z^m inside Z_omega only sees f_m
                ambient = len(columns[0]) if columns else 0
                f = _concrete(spec, ambient)
                report.input["level"] = ambient
            else:
                f = spec.polynomial
                ambient = len(columns[0]) if columns else f.ambient_dim
                if ambient < f.ambient_dim:
                    raise UsageError(
                        f"subgroup lives in Z^{ambient} but the function uses {f.ambient_dim} coordinates"
                    )
            subgroup = Subgroup.from_columns(columns, ambient)
        variety = variety_dim(f, subgroup)
        report.result = variety.to_dict()
        report.witnesses = [subgroup.to_dict()["generators"]]

    def _schedule(self, args) -> ScheduleBudget:
        seed = args.seed if args.seed is not None else self.config.seed
        kwargs: Dict[str, int] = {"seed": seed}
        if args.budget is not None:
            kwargs["random_candidates"] = args.budget
        if getattr(args, "levels", None) is not None:
            kwargs["max_level"] = args.levels
        return ScheduleBudget(**kwargs)

    def _dfr(self, args, report):
        spec = self._function(args, report)
        budget = self._schedule(args)
        estimate = DfSearch(spec.family(), budget).estimate(args.r)
        report.seed = budget.seed
        report.schedule_id = budget.schedule_id
        report.result = estimate.to_dict()
        report.witnesses = [estimate.witness.to_dict()["generators"]]

    def _classify(self, args, report):
        spec = self._function(args, report)
        seed = args.seed if args.seed is not None else self.config.seed
        budget = ClassifyBudget(seed=seed) if args.budget is None else ClassifyBudget(seed=seed, random_candidates=args.budget)
        outcome = classify(spec.family(), budget)
        report.seed = seed
        report.schedule_id = outcome.schedule_id
        report.result = outcome.to_dict()
        report.result["budget"] = budget.to_dict()
        report.witnesses = outcome.witnesses()
        if outcome.verdict is Verdict.INCONCLUSIVE:
            report.exit_code = EXIT_INCONCLUSIVE

    def _hom_dim(self, args, report):
        try:
            descriptor = GroupDescriptor.parse(args.group)
        except ValueError:
            if GroupDescriptor.looks_like(args.group):
                raise
            spec = parse_function(args.group)
            report.input = spec.to_dict()
            descriptor = (
                GroupDescriptor.parse("Z_omega") if spec.is_schema else GroupDescriptor.parse(f"Z^{spec.ambient}")
            )
        else:
            report.input = {"group": descriptor.render()}
        dimension = hom_dimension(descriptor)
        infinite = dimension == float("inf")
        report.result = {
            "group": descriptor.render(),
            "dimension": None if infinite else dimension,
            "infinite": infinite,
        }

    def _taylor(self, args, report):
        P = parse_function(args.p)
        if P.is_schema:
            raise UsageError("--p must be a concrete polynomial")
        additive = [parse_function(part) for part in args.additive.split(";") if part.strip()]
        if any(a.is_schema for a in additive):
            raise UsageError("--additive entries must be concrete polynomials")
        report.input = {"p": P.render(), "additive": [a.render() for a in additive]}
        outcome = taylor_generators(P.polynomial, [a.polynomial for a in additive])
        report.result = outcome.to_dict()

    def _slice(self, args, report):
        spec = self._function(args, report)
        f = _concrete(spec, args.level)
        columns = parse_matrix(args.ys)
        ys = [GroupElement.from_dense(c) for c in columns]
        outcome = top_additive_slice(f, ys)
        report.result = outcome.to_dict()
        report.witnesses = [columns]

    def _difference(self, args, report):
        spec = self._function(args, report)
        y = parse_vector(args.y)
        level = max(args.level, y.ambient_dim) if spec.is_schema else args.level
        f = _concrete(spec, level)
        delta = f.translate(y) - f
        result: Dict[str, Any] = {"y": y.to_dict(), "difference": delta.render()}
        if args.levels:
            levels = _parse_levels(args.levels)
            family = spec.family()
            result["profile"] = [row.to_dict() for row in difference_profile(family, y, levels)]
        report.result = result


def _parse_levels(text: str) -> List[int]:
    try:
        levels = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise UsageError(f"malformed level list {text!r}") from exc
    if not levels or any(level <= 0 for level in levels):
        raise UsageError(f"levels must be positive integers, got {text!r}")
    return levels


def exit_code_of(reports: Sequence[CommandReport]) -> int:
    return max((r.exit_code for r in reports), default=EXIT_OK)
