import argparse
import sys
import time
from typing import List, Optional, Tuple

from Commands.report import Report, emit_report
from Core.Enums.command import OutputFormat
from Core.Enums.kernel import ReportVerdict
from Core.Factory.command import CommandFactory
from Core.Repository.command import CommandRepository
from Core.Utils.exception import KernelError, TheorySyntaxError
from Core.Utils.helper import Helper
from Core.Utils.logger import Logger

logger = Logger.get_logger()

__all__ = ["build_parser", "run_command", "emit_report", "main"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Raises on usage errors instead of exiting; --help still exits 0."""

    def error(self, message: str):
        raise UsageError(message)


def _add_output_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.JSON.value)
    parser.add_argument("--timing", action="store_true", help="include wall-clock timing in the report")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ttk", description="Partial Horn theory kernel")
    _add_output_options(parser)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, cls in CommandFactory.commands().items():
        cls().configure(sub.add_parser(name, help=cls.help))
    return parser


def _output_options(argv: List[str]) -> Tuple[OutputFormat, bool]:
    default_timing = Helper.get_settings().include_timing
    pre = _Parser(add_help=False)
    _add_output_options(pre)
    try:
        known, _ = pre.parse_known_args(argv)
    except UsageError:
        return OutputFormat.JSON, default_timing
    return OutputFormat(known.format), known.timing or default_timing


def _error_report(command: str, e: Exception) -> Report:
    details = {"error": type(e).__name__, "message": getattr(e, "message", str(e))}
    if isinstance(e, TheorySyntaxError):
        details.update(line=e.line, column=e.column, expected=e.expected)
    return Report(command, ReportVerdict.ERROR, details)


def run_command(argv: List[str]) -> Tuple[int, Report]:
    """Parse and run one sub-command; errors become an error report with exit code 2."""
    started = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(f"ttk: error: {e}", file=sys.stderr)
        command = next((a for a in argv if not a.startswith("-")), "ttk")
        report = _error_report(command, e)
        return report.exit_code.value, report

    logger.info("▶️ ttk %s", args.command)
    try:
        report = CommandRepository(args.command).obj.run(args)
    except (KernelError, OSError) as e:
        print(f"ttk {args.command}: {type(e).__name__}: {getattr(e, 'message', e)}", file=sys.stderr)
        logger.error("❌ %s failed: %s", args.command, e)
        report = _error_report(args.command, e)
    report.timing_ms = (time.perf_counter() - started) * 1000
    logger.info("🏁 ttk %s: %s", args.command, report.verdict.value)
    return report.exit_code.value, report


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    code, report = run_command(argv)
    fmt, include_timing = _output_options(argv)
    sys.stdout.buffer.write(emit_report(report, fmt, include_timing))
    sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
