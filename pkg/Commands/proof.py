import argparse

from Commands.common import add_bounds, add_file, bounds, load
from Commands.report import Report, from_verdict
from Core.Base.command import BaseCommand
from Core.Enums.command import CommandType
from Deduction.prover import prove, verdict_of


class ProveCommand(BaseCommand):
    command_type = CommandType.PROVE.value
    help = "derive an axiom's sequent from the rest of its theory"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        add_file(parser)
        parser.add_argument("--axiom-or-goal", required=True, dest="goal", help="axiom naming the sequent to prove")
        parser.add_argument(
            "--against", default=None,
            help="theory to prove in; default is the goal's theory without the goal axiom",
        )
        add_bounds(parser)

    def run(self, args: argparse.Namespace) -> Report:
        _, depth, fuel = bounds(args)
        ws = load(args.file, args.max_level)
        theory = ws.theory(args.theory)
        goal = theory.axiom(args.goal)
        if args.against is None:
            against = theory.with_axioms([ax for ax in theory.axioms if ax.name != goal.name])
        else:
            against = ws.theory(args.against)
        outcome = prove(against, goal.sequent, depth, fuel)
        return Report(
            self.command_type,
            from_verdict(verdict_of(outcome)),
            {"goal": goal.name, "theory": against.name, **outcome.to_dict()},
            {"depth": depth, "fuel": fuel},
        )
