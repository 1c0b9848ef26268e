import argparse

from Commands.common import add_bounds, add_file, bounds, directed_trs, load, natural, telescope, telescopes_of, term
from Commands.report import Report, from_confluence
from Core.Base.command import BaseCommand
from Core.Enums.command import CommandType
from Core.Enums.kernel import ConfluenceVerdict, ReportVerdict
from Core.Utils.exception import FuelExhausted
from Morita.telescope import EMPTY_TELESCOPE
from Rewriting.engine import normalize
from Rewriting.trace import replay
from Structure.confluence import certify_confluent


def _add_separation_bound(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--bound", type=natural, default=2, help="bound for the separation check behind the rules")


class NormalizeCommand(BaseCommand):
    command_type = CommandType.NORMALIZE.value
    help = "reduce a term with the directed axioms and the telescope"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        add_file(parser)
        parser.add_argument("--term", required=True)
        parser.add_argument("--telescope", default=None)
        _add_separation_bound(parser)
        add_bounds(parser, depth=False)

    def run(self, args: argparse.Namespace) -> Report:
        _, _, fuel = bounds(args)
        ws = load(args.file, args.max_level)
        theory = ws.theory(args.theory)
        tel = telescope(ws, theory, args.telescope)
        trs = directed_trs(theory, args.bound)
        start = term(theory, args.term, tel)
        try:
            trace = normalize(trs, tel, start, fuel)
        except FuelExhausted as e:
            return Report(
                self.command_type,
                ReportVerdict.INCONCLUSIVE,
                {"normal_form": None, "trace": e.trace.to_dict() if e.trace else None},
                {"fuel": fuel},
            )
        return Report(
            self.command_type,
            ReportVerdict.OK,
            {"normal_form": str(trace.end), "replayed": replay(trace, trs, tel) == trace.end, "trace": trace.to_dict()},
            {"fuel": fuel},
        )


class ConfluenceCommand(BaseCommand):
    command_type = CommandType.CONFLUENCE.value
    help = "certify joinability of derivable equalities under telescopes"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        add_file(parser)
        parser.add_argument("--telescope", default=None, help="default: the empty telescope and every declared one")
        parser.add_argument("--width", type=natural, default=None)
        _add_separation_bound(parser)
        add_bounds(parser)

    def run(self, args: argparse.Namespace) -> Report:
        settings, depth, fuel = bounds(args)
        width = settings.width if args.width is None else args.width
        ws = load(args.file, args.max_level)
        theory = ws.theory(args.theory)
        trs = directed_trs(theory, args.bound)
        if args.telescope is not None:
            tels = [telescope(ws, theory, args.telescope)]
        else:
            tels = [EMPTY_TELESCOPE, *telescopes_of(ws, theory).values()]

        reports = {tel.name: certify_confluent(theory, trs, tel, depth, fuel, width) for tel in tels}
        verdicts = {r.verdict for r in reports.values()}
        for v in (ConfluenceVerdict.COUNTEREXAMPLE, ConfluenceVerdict.INCONCLUSIVE):
            if v in verdicts:
                verdict = v
                break
        else:
            verdict = ConfluenceVerdict.CERTIFIED_AT_BOUND
        return Report(
            self.command_type,
            from_confluence(verdict),
            {
                "theory": theory.name,
                "confluence": verdict.value,
                "trs": trs.to_dict(),
                "telescopes": {name: r.to_dict() for name, r in reports.items()},
            },
            {"depth": depth, "fuel": fuel, "width": width, "bound": args.bound},
        )
