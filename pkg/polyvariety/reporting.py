"""Report rendering: stable JSON for machines, a flat pandas table for people."""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Any, Iterable, List, Sequence, Tuple, Union

import pandas as pd

if TYPE_CHECKING:  # pragma: no cover
    from .pipeline import CommandReport

Reports = Union["CommandReport", Sequence["CommandReport"]]


def _payload(reports: Reports) -> Any:
    if isinstance(reports, (list, tuple)):
        return [r.to_json_dict() for r in reports]
    return reports.to_json_dict()


@dataclass
class JSONReportWriter:
    """Writes command reports as sorted, indented JSON (a list for scenario runs)."""

    indent: int = 2

    def render(self, reports: Reports) -> str:
        return json.dumps(_payload(reports), indent=self.indent, sort_keys=True, ensure_ascii=False) + "\n"

    def write(self, reports: Reports, path: Path) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.render(reports), encoding="utf-8")
        return path


def flatten(value: Any, prefix: str = "") -> Iterable[Tuple[str, str]]:
    """Dotted key paths to leaf values."""
    if isinstance(value, dict):
        for key in sorted(value):
            yield from flatten(value[key], f"{prefix}.{key}" if prefix else str(key))
    elif isinstance(value, list) and value and any(isinstance(v, (dict, list)) for v in value):
        for index, item in enumerate(value):
            yield from flatten(item, f"{prefix}[{index}]")
    else:
        yield prefix, json.dumps(value, ensure_ascii=False) if not isinstance(value, str) else value


@dataclass
class TableReportWriter:
    """Key/value table per report. The layout carries no stability guarantee."""

    max_colwidth: int = 80

    def frame(self, report: "CommandReport") -> pd.DataFrame:
        rows: List[Tuple[str, str]] = list(flatten(report.to_json_dict()))
        return pd.DataFrame(rows, columns=["field", "value"])

    def render(self, reports: Reports) -> str:
        items = list(reports) if isinstance(reports, (list, tuple)) else [reports]
        blocks = []
        for report in items:
            frame = self.frame(report)
            with pd.option_context("display.max_colwidth", self.max_colwidth):
                blocks.append(f"== {report.command} (exit {report.exit_code}) ==\n" + frame.to_string(index=False))
        return "\n\n".join(blocks) + "\n"

    def write(self, reports: Reports, path: Path) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.render(reports), encoding="utf-8")
        return path
