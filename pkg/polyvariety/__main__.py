"""Command-line interface: ``python -m polyvariety <subcommand> ...``."""
from __future__ import annotations

import logging
import sys
from typing import List, Optional, Sequence

from .pipeline import EXIT_USAGE, CommandReport, EngineConfig, UsageError, VarietyEngine, exit_code_of
from .reporting import JSONReportWriter, TableReportWriter


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    verbose = "--verbose" in argv
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    engine = VarietyEngine()
    try:
        args = engine.parse_args(argv)
    except UsageError as exc:
        report = CommandReport(command=argv[0] if argv else "", argv=argv, exit_code=EXIT_USAGE,
                               error={"kind": "usage", "message": str(exc)})
        sys.stdout.write(JSONReportWriter().render(report))
        return EXIT_USAGE

    config = EngineConfig(output_format=args.format or "json")
    engine = VarietyEngine(config)
    reports: List[CommandReport]
    if args.command == "scenario":
        try:
            reports = engine.run_scenario(args.path)
        except UsageError as exc:
            logging.getLogger(__name__).error("%s", exc)
            return EXIT_USAGE
        payload = reports
    else:
        # global flags are stripped; handlers see only the subcommand
        start = argv.index(args.command)
        report = engine.run_command(argv[start:])
        reports = [report]
        payload = report

    writer = TableReportWriter() if config.output_format == "table" else JSONReportWriter()
    if args.output is not None:
        writer.write(payload, args.output)
    else:
        sys.stdout.write(writer.render(payload))
    return exit_code_of(reports)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
