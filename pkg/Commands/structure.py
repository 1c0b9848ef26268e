import argparse

from Commands.common import add_bounds, add_file, bounds, load, natural, telescopes_of
from Commands.report import Report, from_verdict
from Core.Base.command import BaseCommand
from Core.Enums.command import CommandType
from Core.Enums.kernel import ReportVerdict
from Core.Utils.exception import UndirectedAxiom
from Core.Utils.logger import Logger
from Deduction.prover import worst
from Morita.telescope import EMPTY_TELESCOPE
from Structure.directed import extract_directed, validate_reduction_system
from Structure.separation import classify_separated, minimal_maximal

logger = Logger.get_logger()


class SeparatedCommand(BaseCommand):
    command_type = CommandType.SEPARATED.value
    help = "classify a theory's axioms as separated and read off its rewrite rules"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        add_file(parser)
        parser.add_argument("--bound", type=natural, default=2, help="depth bound for condition 3")
        parser.add_argument(
            "--reduction-system", action="store_true", dest="reduction_system",
            help="also validate the rules with the theory's telescopes",
        )
        add_bounds(parser)

    def run(self, args: argparse.Namespace) -> Report:
        _, depth, fuel = bounds(args)
        ws = load(args.file, args.max_level)
        theory = ws.theory(args.theory)
        cert = classify_separated(theory, args.bound)
        if cert is None:
            return Report(
                self.command_type,
                ReportVerdict.REFUTED,
                {"theory": theory.name, "separated": False},
                {"bound": args.bound},
            )

        minimal, maximal = minimal_maximal(cert, theory)
        details = {
            "theory": theory.name,
            "separated": True,
            "certificate": cert.to_dict(),
            "minimal_axioms": len(minimal.axioms),
            "maximal_axioms": len(maximal.axioms),
        }
        verdicts = [cert.condition3.verdict]
        try:
            trs = extract_directed(theory, cert)
        except UndirectedAxiom as e:
            logger.info("↩️ '%s' has an undirected axiom '%s': %s", theory.name, e.axiom, e.reason)
            details["trs"] = None
            details["undirected"] = {"axiom": e.axiom, "reason": e.reason}
        else:
            details["trs"] = trs.to_dict()
            if args.reduction_system:
                tels = [EMPTY_TELESCOPE, *telescopes_of(ws, theory).values()]
                system = validate_reduction_system(theory, trs, tels, depth=depth, fuel=fuel, cert=cert)
                details["reduction_system"] = system.to_dict()
                verdicts.append(system.verdict)
        return Report(
            self.command_type,
            from_verdict(worst(verdicts)),
            details,
            {"bound": args.bound, "depth": depth, "fuel": fuel},
        )
