import argparse
from typing import Dict

from Commands.common import load, natural
from Commands.report import Report
from Core.Base.command import BaseCommand
from Core.Enums.command import CommandType
from Core.Enums.kernel import ReportVerdict
from Core.Utils.helper import Helper
from Kernel.colimit import Diagram, theory_colimit
from Kernel.morphism import TheoryMorphism
from Kernel.theory import Theory
from Stdlib.base import base_theory
from Syntax.ast import TheoryFile
from Syntax.printer import morphism_block, print_theory_file, theory_block


class ColimitCommand(BaseCommand):
    command_type = CommandType.COLIMIT.value
    help = "glue the theories of one or more files along their morphisms"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("files", nargs="+")
        parser.add_argument("--name", default="colimit", help="name of the glued theory")
        parser.add_argument("--max-level", type=natural, default=None, dest="max_level")

    def run(self, args: argparse.Namespace) -> Report:
        max_level = Helper.get_settings().max_level if args.max_level is None else args.max_level
        theories: Dict[str, Theory] = {}
        morphisms: Dict[str, TheoryMorphism] = {}
        for path in args.files:
            ws = load(path, max_level)
            for name in ws.declared:
                theories[name] = ws.theories[name]
            for name, f in ws.morphisms.items():
                morphisms[name] = f
                theories.setdefault(f.source.name, f.source)
                theories.setdefault(f.target.name, f.target)

        edges = [(f.source.name, f.target.name, f) for f in morphisms.values()]
        diagram = Diagram.build(base_theory(max_level), list(theories.values()), edges)
        result = theory_colimit(diagram, args.name)
        blocks = (theory_block(result.theory),) + tuple(morphism_block(i) for i in result.injections)
        return Report(
            self.command_type,
            ReportVerdict.OK,
            {
                "theory": result.theory.name,
                "nodes": sorted(theories),
                "edges": sorted(morphisms),
                "injections": [
                    {"name": i.name, "source": i.source.name, "obligations": i.obligation_summary()}
                    for i in result.injections
                ],
                "renamings": {name: dict(sorted(r.items())) for name, r in sorted(result.renamings.items())},
                "text": print_theory_file(TheoryFile(blocks)),
            },
            {"max_level": max_level},
        )
