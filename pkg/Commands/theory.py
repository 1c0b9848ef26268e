import argparse

from Commands.common import add_bounds, add_file, bounds, load, natural
from Commands.report import Report, from_verdict
from Core.Base.command import BaseCommand
from Core.Enums.command import CommandType
from Core.Enums.kernel import ObligationStatus, ReportVerdict, Verdict
from Core.Utils.helper import Helper
from Core.Utils.logger import Logger
from Deduction.prover import certify_obligations, worst
from Kernel.morphism import TheoryMorphism
from Kernel.theory import validate_theory
from Morita.telescope import validate_telescope
from Stdlib.registry import stdlib_artifact
from Syntax.ast import TheoryFile
from Syntax.parser import parse_theory_file
from Syntax.printer import morphism_block, print_theory_file, theory_block

logger = Logger.get_logger()

_OBLIGATION_VERDICT = {
    ObligationStatus.CERTIFIED: Verdict.CERTIFIED,
    ObligationStatus.REFUTED: Verdict.REFUTED,
    ObligationStatus.ASSUMED: Verdict.INCONCLUSIVE,
}


class CheckCommand(BaseCommand):
    command_type = CommandType.CHECK.value
    help = "validate every theory, telescope and morphism of a file"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        add_file(parser)
        add_bounds(parser)

    def run(self, args: argparse.Namespace) -> Report:
        _, depth, fuel = bounds(args)
        ws = load(args.file, args.max_level)
        verdicts, theories, morphisms = [], [], []
        for name in ws.declared:
            theory = ws.theories[name]
            report = validate_theory(theory)
            verdicts.append(Verdict.CERTIFIED if report.valid else Verdict.REFUTED)
            tels = []
            for tel in ws.telescopes[name].values():
                tel_report = validate_telescope(theory, tel, depth, fuel)
                verdicts.append(tel_report.verdict)
                tels.append(tel_report.to_dict())
            theories.append({**report.to_dict(), "telescopes": tels})

        for f in ws.morphisms.values():
            checked: TheoryMorphism = certify_obligations(f, depth, fuel)
            summary = checked.obligation_summary()
            verdict = worst(_OBLIGATION_VERDICT[ObligationStatus(s)] for s in summary.values())
            verdicts.append(verdict)
            morphisms.append({
                "morphism": f.name,
                "source": f.source.name,
                "target": f.target.name,
                "verdict": verdict.value,
                "obligations": summary,
            })
        logger.info("🩺 Checked %s: %d theories, %d morphisms", args.file, len(theories), len(morphisms))
        return Report(
            self.command_type,
            from_verdict(worst(verdicts)),
            {"theories": theories, "morphisms": morphisms},
            {"depth": depth, "fuel": fuel},
        )


class PrintCommand(BaseCommand):
    command_type = CommandType.PRINT.value
    help = "print a theory file in canonical form"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("file")

    def run(self, args: argparse.Namespace) -> Report:
        text = print_theory_file(parse_theory_file(Helper.read_text(args.file)))
        return Report(self.command_type, ReportVerdict.OK, {"text": text})


class StdlibCommand(BaseCommand):
    command_type = CommandType.STDLIB.value
    help = "show a stdlib theory or morphism"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("name")
        parser.add_argument("--max-level", type=natural, default=None, dest="max_level")
        parser.add_argument("--metadata", action="store_true", help="compute and include the stored certificates")

    def run(self, args: argparse.Namespace) -> Report:
        artifact = stdlib_artifact(args.name, args.max_level)
        payload = artifact.payload
        if isinstance(payload, TheoryMorphism):
            block, kind = morphism_block(payload), "morphism"
        else:
            block, kind = theory_block(payload, telescopes=artifact.telescopes.values()), "theory"
        details = {"name": artifact.name, "kind": kind, "text": print_theory_file(TheoryFile((block,)))}
        if args.metadata:
            details["metadata"] = artifact.metadata.to_dict()
        return Report(self.command_type, ReportVerdict.OK, details)
