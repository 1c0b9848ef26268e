import argparse
from typing import List, Optional

from Commands.common import add_bounds, add_file, bounds, load, natural, telescope, telescopes_of, term
from Commands.report import Report, from_verdict
from Core.Base.command import BaseCommand
from Core.Enums.command import CommandType, MoritaMode
from Core.Utils.exception import MissingWitness
from Core.Utils.helper import Settings
from Core.Utils.logger import Logger
from Kernel.morphism import TheoryMorphism
from Morita.ext import check_ext_morita, extra_axioms
from Morita.homotopy import TermHtpy
from Morita.lifting import (
    Cond1Witness,
    LiftingInstance,
    check_cond1_witness,
    check_type_lifting,
    check_weak_lifting_instance,
    reflexive_homotopy,
    reflexive_provider,
)
from Morita.telescope import EMPTY_TELESCOPE, Telescope, enumerate_telescopes
from Stdlib.registry import MORPHISM_NAMES, stdlib_morphism
from Syntax.elaborator import Workspace

logger = Logger.get_logger()


def _morphism(ws: Workspace, name: str) -> TheoryMorphism:
    if name in ws.morphisms or name not in MORPHISM_NAMES:
        return ws.morphism(name)
    return stdlib_morphism(name).payload


def _witness(name: str) -> Cond1Witness:
    witness: Optional[Cond1Witness] = None
    if name in MORPHISM_NAMES:
        witness = stdlib_morphism(name).metadata.witness
    if witness is None:
        raise MissingWitness(f"No stored lifting witness for '{name}'")
    return witness


class MoritaCommand(BaseCommand):
    command_type = CommandType.MORITA.value
    help = "check the lifting conditions of a theory morphism at explicit bounds"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        add_file(parser)
        parser.add_argument("--morphism", required=True)
        parser.add_argument("--mode", choices=[m.value for m in MoritaMode], default=MoritaMode.EXT.value)
        parser.add_argument("--length", type=natural, default=None, help="enumerate source telescopes up to this length")
        parser.add_argument("--limit", type=natural, default=None, help="cap on enumerated telescopes")
        parser.add_argument("--basic", action="store_true", help="cond1: skip symbols the witness marks derived")
        parser.add_argument("--telescope", default=None, help="instance: source telescope")
        parser.add_argument("--type", default=None, dest="source_type", help="instance: source type A")
        parser.add_argument("--target", default=None, help="instance: target term a")
        parser.add_argument("--candidate", default=None, help="instance: source term lifting a")
        parser.add_argument("--homotopy", default=None, help="instance: target term h with ty(h) = Id(f(a'), a)")
        parser.add_argument("--strict", action="store_true", help="instance: require f(a') = a")
        add_bounds(parser)

    def run(self, args: argparse.Namespace) -> Report:
        settings, depth, fuel = bounds(args)
        ws = load(args.file, args.max_level)
        f = _morphism(ws, args.morphism)
        mode = MoritaMode(args.mode)
        logger.info("🧭 Morita %s check of '%s' (%s -> %s)", mode.value, f.name, f.source.name, f.target.name)
        match mode:
            case MoritaMode.EXT:
                return self._ext(args, settings, f, fuel)
            case MoritaMode.COND1:
                report = check_cond1_witness(f, _witness(f.name), depth, args.basic, fuel)
                details = report.to_dict()
            case MoritaMode.TYPE_LIFT:
                tels = self._telescopes(args, settings, ws, f)
                report = check_type_lifting(f, tels, reflexive_provider(f.source, depth, fuel), depth, fuel)
                details = {**report.to_dict(), "telescopes": [t.name for t in tels]}
            case MoritaMode.INSTANCE:
                report = check_weak_lifting_instance(self._instance(args, ws, f), depth, fuel)
                details = report.to_dict()
        return Report(
            self.command_type,
            from_verdict(report.verdict),
            {"morphism": f.name, "mode": mode.value, **details},
            {"depth": depth, "fuel": fuel},
        )

    def _telescopes(self, args: argparse.Namespace, settings: Settings, ws: Workspace, f: TheoryMorphism) -> List[Telescope]:
        if args.length is None:
            return [EMPTY_TELESCOPE, *telescopes_of(ws, f.source).values()]
        return enumerate_telescopes(f.source, args.length, settings.sub_depth, limit=args.limit)

    def _ext(self, args: argparse.Namespace, settings: Settings, f: TheoryMorphism, fuel: int) -> Report:
        """--depth is the depth the conclusions are proved at; premises saturate `slack` lower."""
        conclusion = settings.depth + settings.slack if args.depth is None else args.depth
        premise = max(conclusion - settings.slack, 0)
        length = 2 if args.length is None else args.length
        tels = enumerate_telescopes(f.source, length, settings.sub_depth, limit=args.limit)
        extra = extra_axioms(f)
        report = check_ext_morita(f.source, extra, tels, settings.sub_depth, premise, fuel, settings.slack)
        return Report(
            self.command_type,
            from_verdict(report.verdict),
            {
                "morphism": f.name,
                "mode": MoritaMode.EXT.value,
                "extra_axioms": [ax.name for ax in extra],
                "telescopes": len(tels),
                **report.to_dict(),
            },
            {"depth": conclusion, "fuel": fuel, "length": length},
        )

    def _instance(self, args: argparse.Namespace, ws: Workspace, f: TheoryMorphism) -> LiftingInstance:
        missing = [flag for flag, value in (("--type", args.source_type), ("--target", args.target), ("--candidate", args.candidate)) if value is None]
        if missing:
            raise MissingWitness(f"Lifting instance needs {', '.join(missing)}")
        tel = telescope(ws, f.source, args.telescope)
        target = term(f.target, args.target, tel)
        if args.strict:
            homotopy = None
        elif args.homotopy is not None:
            homotopy = TermHtpy(term(f.target, args.homotopy, tel))
        else:
            homotopy = reflexive_homotopy(f.target, target)
        return LiftingInstance(
            f,
            tel,
            term(f.source, args.source_type, tel),
            target,
            term(f.source, args.candidate, tel),
            homotopy,
            args.strict,
        )
