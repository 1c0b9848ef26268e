import argparse
from typing import Dict, Optional, Tuple

from Core.Utils.exception import NotSeparated
from Core.Utils.helper import Helper, Settings
from Kernel.term import Term
from Kernel.theory import Theory
from Morita.telescope import EMPTY_TELESCOPE, Telescope
from Rewriting.rules import TRS
from Stdlib.registry import THEORY_NAMES, stdlib_theory
from Structure.directed import extract_directed
from Structure.separation import classify_separated
from Syntax.elaborator import Workspace, elaborate, elaborate_term
from Syntax.parser import parse_term, parse_theory_file


def natural(text: str) -> int:
    """argparse type for bounds and levels."""
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got '{text}'") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def add_file(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("file", help="theory file; stdlib/NAME.th reads a packaged file")
    parser.add_argument("--theory", default=None, help="theory block to use (default: the last one)")
    parser.add_argument("--max-level", type=natural, default=None, dest="max_level")


def add_bounds(parser: argparse.ArgumentParser, depth: bool = True, fuel: bool = True) -> None:
    if depth:
        parser.add_argument("--depth", type=natural, default=None)
    if fuel:
        parser.add_argument("--fuel", type=natural, default=None)


def bounds(args: argparse.Namespace) -> Tuple[Settings, int, int]:
    settings = Helper.get_settings()
    depth = getattr(args, "depth", None)
    fuel = getattr(args, "fuel", None)
    return (
        settings,
        settings.depth if depth is None else depth,
        settings.fuel if fuel is None else fuel,
    )


def load(path: str, max_level: Optional[int] = None) -> Workspace:
    return elaborate(parse_theory_file(Helper.read_text(path)), max_level=max_level)


def telescope(ws: Workspace, theory: Theory, name: Optional[str]) -> Telescope:
    if name is None:
        return EMPTY_TELESCOPE
    stored = telescopes_of(ws, theory)
    if name in stored:
        return stored[name]
    return ws.telescope(name)[1]


def term(theory: Theory, text: str, tel: Telescope) -> Term:
    """A term over the telescope's variables."""
    return elaborate_term(theory, parse_term(text), {v.name: v for v in tel.variables})


def directed_trs(theory: Theory, bound: int) -> TRS:
    cert = classify_separated(theory, bound)
    if cert is None:
        raise NotSeparated(f"'{theory.name}' does not have separated axioms")
    return extract_directed(theory, cert)


def telescopes_of(ws: Workspace, theory: Theory) -> Dict[str, Telescope]:
    """Telescopes declared for the theory, or shipped with it when it is a stdlib import."""
    if theory.name in ws.telescopes:
        return dict(ws.telescopes[theory.name])
    if theory.name in THEORY_NAMES:
        return dict(stdlib_theory(theory.name).telescopes)
    return {}
