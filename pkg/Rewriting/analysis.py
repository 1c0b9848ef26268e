from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from Core.Enums.kernel import Verdict
from Core.Utils.logger import Logger
from Kernel.substitution import Substitution
from Kernel.symbol import FunSymbol, is_structural
from Kernel.term import App, Position, Term, Var, positions, term_key, variables
from Kernel.theory import Theory
from Morita.telescope import Telescope
from Rewriting.engine import joinable, step
from Rewriting.rules import TRS, RewriteRule, validate_trs

logger = Logger.get_logger()


@dataclass(frozen=True)
class Peak:
    source: Term
    left: Term
    right: Term
    verdict: Verdict
    explored: int = 0

    def to_dict(self) -> Dict:
        return {
            "term": str(self.source),
            "left": str(self.left),
            "right": str(self.right),
            "verdict": self.verdict.value,
            "explored": self.explored,
        }


@dataclass(frozen=True)
class LocalConfluenceReport:
    reachable: int
    peaks_checked: int
    unjoined: Tuple[Peak, ...] = field(default_factory=tuple)

    @property
    def counterexamples(self) -> List[Peak]:
        return [p for p in self.unjoined if p.verdict is Verdict.REFUTED]

    @property
    def verdict(self) -> Verdict:
        if self.counterexamples:
            return Verdict.REFUTED
        if self.unjoined:
            return Verdict.INCONCLUSIVE
        return Verdict.CERTIFIED

    def to_dict(self) -> Dict:
        return {
            "verdict": self.verdict.value,
            "reachable": self.reachable,
            "peaks_checked": self.peaks_checked,
            "unjoined": [p.to_dict() for p in self.unjoined],
        }


def check_local_confluence(
    trs: TRS,
    tel: Optional[Telescope],
    seeds: Iterable[Term],
    fuel: int,
    width: int = 200,
) -> LocalConfluenceReport:
    """Every one-step peak reachable from the seeds within `fuel` steps must be joinable.

    An unjoined peak whose two reduction graphs were explored to the end is a
    counterexample; otherwise it is reported as inconclusive.
    """
    reachable: Dict[Term, int] = {}
    frontier = sorted(set(seeds), key=term_key)
    for t in frontier:
        reachable[t] = 0
    while frontier:
        fresh = []
        for t in frontier:
            if reachable[t] >= fuel:
                continue
            for successor, _ in step(trs, tel, t):
                if successor not in reachable:
                    reachable[successor] = reachable[t] + 1
                    fresh.append(successor)
        frontier = sorted(fresh, key=term_key)[:width]

    peaks, unjoined = 0, []
    for t in sorted(reachable, key=term_key):
        successors = [s for s, _ in step(trs, tel, t)]
        for i in range(len(successors)):
            for j in range(i + 1, len(successors)):
                left, right = successors[i], successors[j]
                if left == right:
                    continue
                peaks += 1
                outcome = joinable(trs, tel, left, right, fuel, width)
                if outcome.joined:
                    continue
                verdict = Verdict.REFUTED if outcome.disjoint else Verdict.INCONCLUSIVE
                unjoined.append(Peak(t, left, right, verdict, outcome.explored))
    report = LocalConfluenceReport(len(reachable), peaks, tuple(unjoined))
    logger.info("🔀 Local confluence: %d terms, %d peaks, %s", len(reachable), peaks, report.verdict.value)
    return report


def rename_apart(t: Term, avoid: Iterable[Var]) -> Term:
    """t with each variable primed until its name clashes with neither `avoid` nor t."""
    own = variables(t)
    taken = {v.name for v in avoid} | {v.name for v in own}
    renaming: Dict[Var, Term] = {}
    for v in sorted(own, key=term_key):
        fresh = f"{v.name}'"
        while fresh in taken:
            fresh += "'"
        taken.add(fresh)
        renaming[v] = Var(fresh, v.sort)
    return Substitution(renaming).apply_term(t)


def _walk(t: Term, rho: Dict[Var, Term]) -> Term:
    while isinstance(t, Var) and t in rho:
        t = rho[t]
    return t


def _occurs(var: Var, t: Term, rho: Dict[Var, Term]) -> bool:
    t = _walk(t, rho)
    if t == var:
        return True
    return isinstance(t, App) and any(_occurs(var, a, rho) for a in t.args)


def unify(s: Term, t: Term) -> Optional[Dict[Var, Term]]:
    """Syntactic most general unifier (triangular form), or None."""
    rho: Dict[Var, Term] = {}
    stack = [(s, t)]
    while stack:
        a, b = stack.pop()
        a, b = _walk(a, rho), _walk(b, rho)
        if a == b:
            continue
        if isinstance(a, Var) or isinstance(b, Var):
            var, other = (a, b) if isinstance(a, Var) else (b, a)
            if var.sort != other.sort or _occurs(var, other, rho):
                return None
            rho[var] = other
            continue
        if a.symbol.name != b.symbol.name or len(a.args) != len(b.args):
            return None
        stack.extend(zip(a.args, b.args))
    return rho


@dataclass(frozen=True)
class Overlap:
    outer: str
    position: Position
    inner: str

    def to_dict(self) -> Dict:
        return {"outer": self.outer, "position": list(self.position), "inner": self.inner}


def _overlaps(outer: TRS, inner: TRS) -> List[Overlap]:
    found = []
    for o in outer.rules:
        for position, sub in positions(o.lhs):
            if isinstance(sub, Var):
                continue
            for i in inner.rules:
                if unify(sub, rename_apart(i.lhs, variables(o.lhs))) is not None:
                    found.append(Overlap(o.name, position, i.name))
    return found


def check_orthogonal(a: TRS, b: TRS) -> Tuple[bool, List[Overlap]]:
    """No left-hand side of one system unifies with a non-variable subterm of a left-hand side of the other."""
    overlaps = _overlaps(a, b) + _overlaps(b, a)
    overlaps.sort(key=lambda o: (o.outer, o.position, o.inner))
    return not overlaps, overlaps


def telescope_system(tel: Telescope) -> TRS:
    """⇒_φ as rewrite rules e_p(x_i) → t_i, telescope variables frozen into constants."""
    frozen = {
        entry.var: App(FunSymbol(f"#{entry.var.name}", (), entry.var.sort), ())
        for entry in tel.entries
    }

    def freeze(t: Term) -> Term:
        match t:
            case Var():
                return frozen.get(t, t)
            case App(symbol=symbol, args=args):
                return App(symbol, tuple(freeze(x) for x in args))
        raise TypeError(t)

    rules = [
        RewriteRule(f"tel[{i}]", freeze(e.boundary), freeze(e.assigned))
        for i, e in enumerate(tel.entries, start=1)
    ]
    return validate_trs(rules, f"phi_{tel.name}")


@dataclass(frozen=True)
class MoritaConfHypotheses:
    left_linear: bool
    boundary_arguments_nonvariable: bool
    orthogonal: bool
    offending: Tuple[str, ...] = ()
    overlaps: Tuple[Overlap, ...] = ()

    @property
    def holds(self) -> bool:
        return self.left_linear and self.boundary_arguments_nonvariable and self.orthogonal

    def to_dict(self) -> Dict:
        return {
            "left_linear": self.left_linear,
            "boundary_arguments_nonvariable": self.boundary_arguments_nonvariable,
            "orthogonal": self.orthogonal,
            "holds": self.holds,
            "offending": list(self.offending),
            "overlaps": [o.to_dict() for o in self.overlaps],
        }


def check_morita_conf_hypotheses(trs: TRS, tel: Telescope, theory: Optional[Theory] = None) -> MoritaConfHypotheses:
    """Left-linearity, non-variable arguments under ty/ft in left-hand sides, orthogonality to ⇒_φ.

    Rules named after axioms of the base theory are left out when `theory` is given.
    """
    if theory is not None:
        trs = trs.without(theory.base_names)
    offending = []
    for rule in trs.rules:
        for _, sub in positions(rule.lhs):
            if isinstance(sub, App) and is_structural(sub.symbol.name) and isinstance(sub.args[0], Var):
                offending.append(rule.name)
                break
    orthogonal, overlaps = check_orthogonal(trs, telescope_system(tel))
    report = MoritaConfHypotheses(trs.left_linear, not offending, orthogonal, tuple(offending), tuple(overlaps))
    logger.info("🧩 Union hypotheses for '%s' with '%s': holds=%s", trs.name, tel.name, report.holds)
    return report
