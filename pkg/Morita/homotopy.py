from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from Core.Enums.kernel import Verdict
from Core.Utils.exception import SortMismatch
from Core.Utils.helper import Helper
from Core.Utils.logger import Logger
from Deduction.prover import prove, verdict_of, worst
from Kernel.formula import Eq
from Kernel.term import Term
from Kernel.theory import Theory, boundary
from Morita.telescope import Context

logger = Logger.get_logger()


@dataclass(frozen=True)
class TermHtpy:
    """h with ty(h) = Id(a, a′)."""

    h: Term


@dataclass(frozen=True)
class TypeHtpy:
    """(f, g, p, g′, p′) between level-0 types A and A′, all of sort tm 1."""

    f: Term
    g: Term
    p: Term
    g_prime: Term
    p_prime: Term


@dataclass(frozen=True)
class HeteroHtpy:
    """A type homotopy between the boundaries plus h with ty(h) = Id(f[a], a′)."""

    type_part: TypeHtpy
    term_part: Term


HomotopyWitness = Union[TermHtpy, TypeHtpy, HeteroHtpy]


def id_name(level: int) -> str:
    return "Id" if level == 0 else f"Id{level}"


@dataclass(frozen=True)
class Judgment:
    label: str
    verdict: Verdict
    goal: str

    def to_dict(self) -> Dict:
        return {"label": self.label, "verdict": self.verdict.value, "goal": self.goal}


@dataclass(frozen=True)
class HomotopyReport:
    judgments: Tuple[Judgment, ...]

    @property
    def verdict(self) -> Verdict:
        return worst(j.verdict for j in self.judgments)

    def to_dict(self) -> Dict:
        return {"verdict": self.verdict.value, "judgments": [j.to_dict() for j in self.judgments]}


def judge(theory: Theory, ctx: Context, label: str, goal: Eq, depth: int, fuel: int) -> Judgment:
    outcome = prove(theory, ctx.sequent((goal,)), depth, fuel)
    return Judgment(label, verdict_of(outcome), str(goal))


def _term_goals(theory: Theory, lhs: Term, rhs: Term, h: Term) -> List[Tuple[str, Eq]]:
    level = lhs.sort.level
    identity = theory.app(id_name(level), lhs, rhs)
    return [("h", Eq(boundary(h, theory), identity))]


def _type_goals(theory: Theory, lhs: Term, rhs: Term, w: TypeHtpy) -> List[Tuple[str, Eq]]:
    if lhs.sort.type_level != 0:
        raise SortMismatch(f"Type homotopies are encoded for level-0 types, got {lhs.sort}")
    ty1 = lambda t: boundary(t, theory)  # noqa: E731
    wk = lambda a, b: theory.app("wk", a, b)  # noqa: E731
    comp = lambda a, b, c, g, f: theory.app("comp1", a, b, c, g, f)  # noqa: E731
    id1 = lambda a, b: theory.app("Id1", a, b)  # noqa: E731
    v0 = lambda a: theory.app("v0", a)  # noqa: E731
    return [
        ("f", Eq(ty1(w.f), wk(lhs, rhs))),
        ("g", Eq(ty1(w.g), wk(rhs, lhs))),
        ("p", Eq(ty1(w.p), id1(comp(lhs, rhs, lhs, w.g, w.f), v0(lhs)))),
        ("g'", Eq(ty1(w.g_prime), wk(rhs, lhs))),
        ("p'", Eq(ty1(w.p_prime), id1(comp(rhs, lhs, rhs, w.f, w.g_prime), v0(rhs)))),
    ]


def validate_homotopy(
    theory: Theory,
    ctx: Context,
    lhs: Term,
    rhs: Term,
    w: HomotopyWitness,
    depth: int,
    fuel: Optional[int] = None,
) -> HomotopyReport:
    """Certify the judgments that make `w` a relative homotopy from lhs to rhs under ctx."""
    fuel = Helper.get_settings().fuel if fuel is None else fuel
    if lhs.sort != rhs.sort:
        raise SortMismatch(f"Homotopy ends have sorts {lhs.sort} and {rhs.sort}")
    match w:
        case TermHtpy(h=h):
            goals = _term_goals(theory, lhs, rhs, h)
        case TypeHtpy():
            goals = _type_goals(theory, lhs, rhs, w)
        case HeteroHtpy(type_part=part, term_part=h):
            goals = [(f"type.{label}", goal) for label, goal in _type_goals(
                theory, boundary(lhs, theory), boundary(rhs, theory), part
            )]
            moved = theory.app("subst1", part.f, lhs)
            goals += [("term.h", Eq(boundary(h, theory), theory.app(id_name(0), moved, rhs)))]
        case _:
            raise TypeError(f"Not a homotopy witness: {w!r}")
    report = HomotopyReport(tuple(judge(theory, ctx, label, goal, depth, fuel) for label, goal in goals))
    logger.debug("🌀 Homotopy %s ~ %s: %s", lhs, rhs, report.verdict.value)
    return report
