from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from Core.Utils.exception import KernelError
from Kernel.substitution import Substitution
from Kernel.term import Position, Term, replace_at, subterm


@dataclass(frozen=True)
class TraceStep:
    """One rewrite: a TRS rule, or telescope entry `telescope_index` (1-based)."""

    position: Position
    rule: Optional[str] = None
    telescope_index: Optional[int] = None
    substitution: Substitution = field(default_factory=Substitution)

    @property
    def label(self) -> str:
        return self.rule if self.rule is not None else f"tel[{self.telescope_index}]"

    def to_dict(self) -> Dict:
        return {
            "position": list(self.position),
            "rule": self.label,
            "substitution": {v.name: str(t) for v, t in self.substitution.sorted_items()},
        }


@dataclass(frozen=True)
class ReductionTrace:
    start: Term
    steps: Tuple[TraceStep, ...] = ()
    end: Optional[Term] = None

    def __post_init__(self):
        if self.end is None:
            object.__setattr__(self, "end", self.start)

    def __len__(self) -> int:
        return len(self.steps)

    def extended(self, step: TraceStep, end: Term) -> "ReductionTrace":
        return ReductionTrace(self.start, self.steps + (step,), end)

    def to_dict(self) -> Dict:
        return {
            "start": str(self.start),
            "end": str(self.end),
            "steps": [s.to_dict() for s in self.steps],
        }


def replay(trace: ReductionTrace, trs, tel=None) -> Term:
    """Re-apply every recorded step and check the trace ends where it says."""
    term = trace.start
    entries = tel.entries if tel is not None else ()
    for number, step in enumerate(trace.steps, start=1):
        redex = subterm(term, step.position)
        if step.rule is not None:
            rule = trs.rule(step.rule)
            if step.substitution.apply(rule.lhs) != redex:
                raise KernelError(f"Step {number}: rule '{rule.name}' does not match {redex}")
            contractum = step.substitution.apply(rule.rhs)
        else:
            entry = entries[step.telescope_index - 1]
            if entry.boundary != redex:
                raise KernelError(f"Step {number}: {redex} is not {entry.boundary}")
            contractum = entry.assigned
        term = replace_at(term, step.position, contractum)
    if term != trace.end:
        raise KernelError(f"Trace replays to {term}, not {trace.end}")
    return term
