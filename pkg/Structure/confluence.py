from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from Core.Enums.kernel import ConfluenceVerdict, Verdict
from Core.Utils.helper import Helper
from Core.Utils.logger import Logger
from Deduction.prover import freshen, prove, worst
from Deduction.saturation import saturate
from Kernel.formula import TOP, Eq
from Kernel.term import App, Term, Var, term_key
from Kernel.symbol import is_structural
from Kernel.theory import Theory
from Morita.telescope import Telescope
from Rewriting.engine import joinable, step
from Rewriting.rules import TRS
from Structure.welldefined import WellDefinedCert, defining_formula

logger = Logger.get_logger()


@dataclass(frozen=True)
class Counterexample:
    left: Term
    right: Term
    kind: str
    evidence: Dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> Dict:
        return {"left": str(self.left), "right": str(self.right), "kind": self.kind, "evidence": self.evidence}


@dataclass(frozen=True)
class ConfluenceReport:
    verdict: ConfluenceVerdict
    checked_pairs: int
    counterexamples: Tuple[Counterexample, ...] = ()
    undecided: int = 0
    converse_checked: int = 0
    bounds: Dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> Dict:
        return {
            "verdict": self.verdict.value,
            "checked_pairs": self.checked_pairs,
            "converse_checked": self.converse_checked,
            "undecided": self.undecided,
            "counterexamples": [c.to_dict() for c in self.counterexamples],
            "bounds": self.bounds,
        }


def _ordered(t: Term, s: Term) -> Tuple[Term, Term]:
    return (t, s) if term_key(t) <= term_key(s) else (s, t)


def certify_confluent(
    theory: Theory,
    trs: TRS,
    tel: Telescope,
    depth: int,
    fuel: int,
    width: Optional[int] = None,
    converse_depth: Optional[int] = None,
) -> ConfluenceReport:
    """Derivable equalities under the telescope must be joinable, and rewrite steps derivable.

    Pairs come from the saturation of the freshened telescope at `depth`; each
    is searched for a common reduct within `fuel` levels. The converse checks
    every one-step reduct of a defined term at `converse_depth` (2·depth).
    """
    width = Helper.get_settings().width if width is None else width
    converse_depth = 2 * depth if converse_depth is None else converse_depth
    fresh = freshen(theory, tel.sequent(TOP))
    facts = saturate(fresh.theory, depth, fuel)

    pairs = sorted(
        {_ordered(fresh.restore(a), fresh.restore(b)) for a, b in facts.equalities()},
        key=lambda p: (term_key(p[0]), term_key(p[1])),
    )
    counterexamples: List[Counterexample] = []
    undecided = 0
    for t, s in pairs:
        if t == s:
            continue
        outcome = joinable(trs, tel, t, s, fuel, width)
        if outcome.joined:
            continue
        if outcome.disjoint:
            proof = prove(theory, tel.sequent((Eq(t, s),)), depth, fuel)
            counterexamples.append(
                Counterexample(t, s, "not-joinable", {
                    "derivation_size": proof.derivations[0].size() if proof.certified else None,
                    "explored": outcome.explored,
                    "fuel": fuel,
                })
            )
        else:
            undecided += 1

    converse = 0
    defined = sorted({fresh.restore(t) for t in facts.defined_terms()}, key=term_key)
    for t in defined:
        for s, how in step(trs, tel, t):
            converse += 1
            outcome = prove(theory, tel.sequent((Eq(t, s),)), converse_depth, fuel)
            if outcome.certified:
                continue
            if outcome.refutable:
                counterexamples.append(Counterexample(t, s, "underivable-step", {"step": how.label}))
            else:
                undecided += 1

    if counterexamples:
        verdict = ConfluenceVerdict.COUNTEREXAMPLE
    elif undecided:
        verdict = ConfluenceVerdict.INCONCLUSIVE
    else:
        verdict = ConfluenceVerdict.CERTIFIED_AT_BOUND
    report = ConfluenceReport(
        verdict, len(pairs), tuple(counterexamples), undecided, converse,
        {"depth": depth, "fuel": fuel, "width": width, "converse_depth": converse_depth},
    )
    logger.info(
        "🔗 Confluence of '%s' under '%s': %d pairs, %d steps, %s",
        theory.name, tel.name, len(pairs), converse, verdict.value,
    )
    return report


def check_defined(
    theory: Theory,
    wd: WellDefinedCert,
    trs: TRS,
    tel: Telescope,
    t: Term,
    fuel: int,
    width: Optional[int] = None,
) -> Verdict:
    """Recursive definedness by joinability of each defining equation.

    Sound only for a theory whose confluence has been certified at a compatible
    bound; a pair whose reduction graphs were exhausted without meeting refutes.
    """
    width = Helper.get_settings().width if width is None else width
    bound = set(tel.variables)
    memo: Dict[Term, Verdict] = {}

    def walk(u: Term) -> Verdict:
        if u in memo:
            return memo[u]
        if isinstance(u, Var):
            verdict = Verdict.CERTIFIED if u in bound else Verdict.INCONCLUSIVE
        else:
            verdict = _app(u)
        memo[u] = verdict
        return verdict

    def _app(u: App) -> Verdict:
        below = worst(walk(a) for a in u.args)
        if below is not Verdict.CERTIFIED:
            return below
        if u.symbol.name not in wd.defining_terms and (
            is_structural(u.symbol.name) or u.symbol.name in theory.base_names
        ):
            # ty_n, ft_n and base constants are defined on defined arguments
            return Verdict.CERTIFIED
        verdict = Verdict.CERTIFIED
        for eq in defining_formula(theory, u.symbol, wd.entries(u.symbol.name), u.args):
            outcome = joinable(trs, tel, eq.lhs, eq.rhs, fuel, width)
            if outcome.joined:
                continue
            if outcome.disjoint:
                return Verdict.REFUTED
            verdict = Verdict.INCONCLUSIVE
        return verdict

    verdict = walk(t)
    logger.debug("❔ %s defined under '%s': %s", t, tel.name, verdict.value)
    return verdict
