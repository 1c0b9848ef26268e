from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from Core.Utils.exception import FuelExhausted
from Core.Utils.logger import Logger
from Kernel.substitution import Substitution, match_term
from Kernel.term import App, Position, Term, replace_at, term_key
from Morita.telescope import Telescope
from Rewriting.rules import TRS
from Rewriting.trace import ReductionTrace, TraceStep

logger = Logger.get_logger()

Successor = Tuple[Term, TraceStep]


def _positions(t: Term, skip_context: bool, prefix: Position = ()) -> Iterator[Tuple[Position, Term]]:
    """Post-order (innermost, leftmost first); optionally not inside context arguments."""
    if isinstance(t, App):
        for index, arg in enumerate(t.args, start=1):
            if skip_context and t.symbol.context_position == index - 1:
                continue
            yield from _positions(arg, skip_context, prefix + (index,))
    yield prefix, t


def _redexes(trs: TRS, tel: Optional[Telescope], t: Term, skip_context: bool) -> Iterator[Successor]:
    entries = tel.entries if tel is not None else ()
    for position, sub in _positions(t, skip_context):
        if not isinstance(sub, App):
            continue
        for rule in trs.rules:
            rho = match_term(rule.lhs, sub)
            if rho is not None:
                rho = Substitution(rho)
                yield (
                    replace_at(t, position, rho.apply_term(rule.rhs)),
                    TraceStep(position, rule=rule.name, substitution=rho),
                )
        for index, entry in enumerate(entries, start=1):
            if entry.boundary == sub:
                yield replace_at(t, position, entry.assigned), TraceStep(position, telescope_index=index)


def step(trs: TRS, tel: Optional[Telescope], t: Term, skip_context: bool = False) -> List[Successor]:
    """All one-step successors under the rules and ⇒_φ, ordered by (position, rule index)."""
    return list(_redexes(trs, tel, t, skip_context))


def normalize(trs: TRS, tel: Optional[Telescope], t: Term, fuel: int, skip_context: bool = False) -> ReductionTrace:
    """Leftmost-innermost reduction to a normal form within `fuel` steps."""
    trace = ReductionTrace(t)
    while True:
        first = next(_redexes(trs, tel, trace.end, skip_context), None)
        if first is None:
            return trace
        if len(trace) >= fuel:
            logger.debug("⛽ Fuel %d exhausted normalizing %s", fuel, t)
            raise FuelExhausted(f"No normal form for {t} within {fuel} steps", trace)
        trace = trace.extended(first[1], first[0])


@dataclass(frozen=True)
class JoinWitness:
    meet: Term
    left_trace: ReductionTrace
    right_trace: ReductionTrace

    @property
    def length(self) -> int:
        return len(self.left_trace) + len(self.right_trace)

    def to_dict(self) -> Dict:
        return {
            "meet": str(self.meet),
            "left": self.left_trace.to_dict(),
            "right": self.right_trace.to_dict(),
        }


@dataclass(frozen=True)
class JoinOutcome:
    witness: Optional[JoinWitness]
    explored: int
    width_exhausted: bool
    complete: bool

    @property
    def joined(self) -> bool:
        return self.witness is not None

    @property
    def disjoint(self) -> bool:
        """Both reduction graphs were explored to the end without meeting."""
        return self.witness is None and self.complete


class _Graph:
    """Breadth-first reduction graph from one term, with parent pointers."""

    def __init__(self, root: Term, trs: TRS, tel: Optional[Telescope], width: int, skip_context: bool):
        self.trs, self.tel, self.width, self.skip_context = trs, tel, width, skip_context
        self.parent: Dict[Term, Optional[Tuple[Term, TraceStep]]] = {root: None}
        self.distance: Dict[Term, int] = {root: 0}
        self.frontier: List[Term] = [root]
        self.width_exhausted = False

    def expand(self) -> None:
        fresh: List[Term] = []
        for term in self.frontier:
            for successor, how in _redexes(self.trs, self.tel, term, self.skip_context):
                if successor not in self.parent:
                    self.parent[successor] = (term, how)
                    self.distance[successor] = self.distance[term] + 1
                    fresh.append(successor)
        if len(fresh) > self.width:
            self.width_exhausted = True
            fresh = sorted(fresh, key=term_key)[: self.width]
        self.frontier = fresh

    def trace(self, root: Term, end: Term) -> ReductionTrace:
        steps: List[TraceStep] = []
        current = end
        while self.parent[current] is not None:
            previous, how = self.parent[current]
            steps.append(how)
            current = previous
        return ReductionTrace(root, tuple(reversed(steps)), end)


def joinable(
    trs: TRS,
    tel: Optional[Telescope],
    t: Term,
    s: Term,
    fuel: int,
    width: int,
    skip_context: bool = False,
) -> JoinOutcome:
    """Search for a common reduct with the least combined trace length, ties by term order."""
    left = _Graph(t, trs, tel, width, skip_context)
    right = _Graph(s, trs, tel, width, skip_context)
    best: Optional[Tuple[int, Tuple[int, str], Term]] = None
    level = 0
    while True:
        for meet in left.distance.keys() & right.distance.keys():
            candidate = (left.distance[meet] + right.distance[meet], term_key(meet), meet)
            if best is None or candidate[:2] < best[:2]:
                best = candidate
        if best is not None and best[0] <= level:
            break
        if level >= fuel or not (left.frontier or right.frontier):
            break
        left.expand()
        right.expand()
        level += 1

    explored = len(left.distance) + len(right.distance)
    width_exhausted = left.width_exhausted or right.width_exhausted
    complete = not width_exhausted and not left.frontier and not right.frontier
    if best is None:
        return JoinOutcome(None, explored, width_exhausted, complete)
    meet = best[2]
    witness = JoinWitness(meet, left.trace(t, meet), right.trace(s, meet))
    return JoinOutcome(witness, explored, width_exhausted, complete)
