from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from Core.Enums.kernel import Verdict
from Core.Utils.helper import Helper
from Core.Utils.logger import Logger
from Deduction.prover import freshen, prove, verdict_of, worst
from Deduction.saturation import saturate
from Kernel.formula import TOP, Sequent
from Kernel.morphism import TheoryMorphism
from Kernel.substitution import Substitution
from Kernel.theory import Axiom, Theory
from Morita.telescope import Telescope

logger = Logger.get_logger()


@dataclass(frozen=True)
class ExtCell:
    axiom: str
    telescope: str
    substitution: str
    verdict: Verdict

    def to_dict(self) -> Dict:
        return {
            "axiom": self.axiom,
            "telescope": self.telescope,
            "substitution": self.substitution,
            "verdict": self.verdict.value,
        }


@dataclass(frozen=True)
class ExtReport:
    theory: str
    enumerated: int
    premises: int
    cells: Tuple[ExtCell, ...] = ()
    bounds: Dict = field(default_factory=dict, compare=False)

    @property
    def failures(self) -> List[ExtCell]:
        return [c for c in self.cells if c.verdict is not Verdict.CERTIFIED]

    @property
    def verdict(self) -> Verdict:
        return worst(c.verdict for c in self.cells)

    def to_dict(self) -> Dict:
        return {
            "theory": self.theory,
            "verdict": self.verdict.value,
            "enumerated": self.enumerated,
            "premises": self.premises,
            "failures": [c.to_dict() for c in self.failures],
            "bounds": self.bounds,
        }


def extra_axioms(f: TheoryMorphism) -> List[Axiom]:
    """Target axioms whose sequent is not already a source axiom, for an inclusion f."""
    known = {ax.sequent for ax in f.source.axioms}
    return [ax for ax in f.target.axioms if ax.sequent not in known]


def check_ext_morita(
    theory: Theory,
    extra: Sequence[Union[Axiom, Sequent]],
    tels: Iterable[Telescope],
    sub_depth: Optional[int] = None,
    depth: Optional[int] = None,
    fuel: Optional[int] = None,
    slack: Optional[int] = None,
) -> ExtReport:
    """Every instance of an extra axiom whose premise holds under a telescope has a derivable conclusion.

    Substitutions are the instances of the premise found in the saturation of
    the freshened telescope at `depth`, restricted to terms of depth ≤ sub_depth;
    the conclusion is then proved at depth + slack.
    """
    settings = Helper.get_settings()
    sub_depth = settings.sub_depth if sub_depth is None else sub_depth
    depth = settings.depth if depth is None else depth
    fuel = settings.fuel if fuel is None else fuel
    slack = settings.slack if slack is None else slack

    named = [
        (item.name, item.sequent) if isinstance(item, Axiom) else (f"extra_{i}", item)
        for i, item in enumerate(extra, start=1)
    ]
    enumerated, premises, cells = 0, 0, []
    for tel in tels:
        fresh = freshen(theory, tel.sequent(TOP))
        facts = saturate(fresh.theory, depth, fuel)
        for name, seq in named:
            seen = set()
            for rho in facts.instances(seq.lhs, seq.var_ctx, settings.samples):
                enumerated += 1
                restored = Substitution({v: fresh.restore(rho[v]) for v in seq.var_ctx})
                if restored in seen or any(t.depth > sub_depth for _, t in restored.items()):
                    continue
                seen.add(restored)
                premises += 1
                outcome = prove(theory, tel.sequent(restored.apply(seq.rhs)), depth + slack, fuel)
                cells.append(ExtCell(name, tel.name, str(restored), verdict_of(outcome)))
                logger.debug("🧩 %s under '%s' at %s: %s", name, tel.name, restored, cells[-1].verdict.value)

    report = ExtReport(
        theory.name, enumerated, premises, tuple(cells),
        {"depth": depth, "fuel": fuel, "sub_depth": sub_depth, "slack": slack},
    )
    logger.info(
        "🧱 Extension check on '%s': %d instances, %d failures, %s",
        theory.name, enumerated, len(report.failures), report.verdict.value,
    )
    return report
