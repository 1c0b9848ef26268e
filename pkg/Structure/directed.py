from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from Core.Enums.kernel import Verdict
from Core.Utils.exception import UndirectedAxiom
from Core.Utils.helper import Helper
from Core.Utils.logger import Logger
from Deduction.prover import freshen, prove, worst
from Deduction.saturation import saturate
from Kernel.formula import TOP, Eq, is_definedness
from Kernel.term import Var, term_key, variables
from Kernel.theory import Theory
from Morita.telescope import Telescope
from Rewriting.engine import joinable, step
from Rewriting.rules import TRS, RewriteRule, validate_trs
from Structure.separation import SeparationCertificate

logger = Logger.get_logger()


def extract_directed(theory: Theory, cert: SeparationCertificate) -> TRS:
    """Read every A_e axiom ψ ⊢ t = s as the rule t → s."""
    rules = []
    for name in cert.a_e:
        seq = theory.axiom(name).sequent
        if len(seq.rhs) != 1 or not isinstance(seq.rhs[0], Eq) or is_definedness(seq.rhs[0]):
            raise UndirectedAxiom(name, "non-equational-rhs")
        lhs, rhs = seq.rhs[0].lhs, seq.rhs[0].rhs
        if isinstance(lhs, Var):
            raise UndirectedAxiom(name, "variable-lhs")
        if not variables(rhs) <= variables(lhs):
            raise UndirectedAxiom(name, "escaping-variable")
        rules.append(RewriteRule(name, lhs, rhs))
    trs = validate_trs(rules, f"{theory.name}_directed")
    logger.info("➡️ Directed '%s': %d rules (left_linear=%s)", theory.name, len(trs), trs.left_linear)
    return trs


@dataclass(frozen=True)
class ConditionReport:
    condition: int
    verdict: Verdict
    checked: int = 0
    note: str = ""
    failures: Tuple[str, ...] = field(default_factory=tuple)

    def to_dict(self) -> Dict:
        return {
            "condition": self.condition,
            "verdict": self.verdict.value,
            "checked": self.checked,
            "note": self.note,
            "failures": list(self.failures),
        }


@dataclass(frozen=True)
class ReductionSystemReport:
    theory: str
    trs: str
    conditions: Tuple[ConditionReport, ...]

    @property
    def verdict(self) -> Verdict:
        return worst(c.verdict for c in self.conditions)

    def to_dict(self) -> Dict:
        return {
            "theory": self.theory,
            "trs": self.trs,
            "verdict": self.verdict.value,
            "conditions": [c.to_dict() for c in self.conditions],
        }


def _combine(condition: int, checked: int, refuted: List[str], open_: List[str], note: str = "") -> ConditionReport:
    if refuted:
        return ConditionReport(condition, Verdict.REFUTED, checked, note, tuple(refuted + open_))
    if open_:
        return ConditionReport(condition, Verdict.INCONCLUSIVE, checked, note, tuple(open_))
    return ConditionReport(condition, Verdict.CERTIFIED, checked, note)


def sampled_steps(theory: Theory, trs: TRS, tel: Telescope, samples: int, depth: int, fuel: int):
    """Steps t ⇒ s from terms defined under the telescope, in term order."""
    fresh = freshen(theory, tel.sequent(TOP))
    facts = saturate(fresh.theory, depth, fuel)
    defined = sorted({fresh.restore(t) for t in facts.defined_terms()}, key=term_key)
    out = []
    for t in defined:
        for s, how in step(trs, tel, t):
            out.append((t, s, how))
            if len(out) >= samples:
                return out
    return out


def validate_reduction_system(
    theory: Theory,
    trs: TRS,
    tels: Iterable[Telescope],
    samples: Optional[int] = None,
    depth: Optional[int] = None,
    fuel: Optional[int] = None,
    cert: Optional[SeparationCertificate] = None,
) -> ReductionSystemReport:
    """The three reduction-system conditions for ⇒_R ∪ ⇒_φ, each at explicit bounds.

    Condition 3 is checked for the axioms named by `cert` (or those named by the
    rules when no certificate is given), with c = x.
    """
    settings = Helper.get_settings()
    samples = settings.samples if samples is None else samples
    depth = settings.depth if depth is None else depth
    fuel = settings.fuel if fuel is None else fuel
    tels = list(tels)

    first = ConditionReport(1, Verdict.CERTIFIED, note="automatic for rules united with the telescope system")

    checked, refuted, open_ = 0, [], []
    for tel in tels:
        for t, s, how in sampled_steps(theory, trs, tel, samples, depth, fuel):
            checked += 1
            outcome = prove(theory, tel.sequent((Eq(t, s),)), depth, fuel)
            if outcome.certified:
                continue
            where = f"{tel.name}: {t} => {s} ({how.label})"
            (refuted if outcome.refutable else open_).append(where)
    second = _combine(2, checked, refuted, open_)

    axioms = cert.a_e if cert is not None else tuple(r.name for r in trs.rules if r.name in theory.axiom_map)
    checked, refuted, open_ = 0, [], []
    for tel in tels:
        fresh = freshen(theory, tel.sequent(TOP))
        facts = saturate(fresh.theory, depth, fuel)
        for name in axioms:
            seq = theory.axiom(name).sequent
            if len(seq.rhs) != 1 or not isinstance(seq.rhs[0], Eq):
                continue
            for rho in facts.instances(seq.lhs, seq.var_ctx, samples):
                eq = rho.apply(seq.rhs[0])
                t, s = fresh.restore(eq.lhs), fresh.restore(eq.rhs)
                checked += 1
                outcome = joinable(trs, tel, t, s, fuel, settings.width)
                if outcome.joined:
                    continue
                where = f"{tel.name}: {name} instance {t} = {s}"
                (refuted if outcome.disjoint else open_).append(where)
    third = _combine(3, checked, refuted, open_)

    report = ReductionSystemReport(theory.name, trs.name, (first, second, third))
    logger.info(
        "🧪 Reduction system '%s' on '%s' over %d telescopes: %s",
        trs.name, theory.name, len(tels), report.verdict.value,
    )
    return report
