from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

from Core.Enums.kernel import Verdict
from Core.Utils.exception import NotSeparated
from Core.Utils.helper import Helper
from Core.Utils.logger import Logger
from Deduction.prover import fresh_name, prove
from Deduction.saturation import saturate
from Kernel.formula import (
    TOP,
    Defined,
    Formula,
    Sequent,
    atom_terms,
    canonical_formula,
    canonicalize,
    format_formula,
    is_definedness,
)
from Kernel.substitution import Substitution
from Kernel.term import App, Term, Var, positions
from Kernel.theory import Axiom, Theory

logger = Logger.get_logger()


@dataclass(frozen=True)
class DefinednessAxiom:
    """φ_σ ⊢ σ(x₁, …, x_k) def, with the parameters in argument order."""

    symbol: str
    axiom: str
    params: Tuple[Var, ...]
    premise: Formula

    def instantiate(self, args: Tuple[Term, ...]) -> Formula:
        """φ_σ[t₁/x₁, …, t_k/x_k]."""
        return Substitution(dict(zip(self.params, args))).apply(self.premise)


@dataclass(frozen=True)
class Condition3Report:
    verdict: Verdict
    bound: int
    checked: int = 0
    failures: Tuple[str, ...] = ()

    def to_dict(self) -> Dict:
        return {
            "verdict": self.verdict.value,
            "bound": self.bound,
            "checked": self.checked,
            "failures": list(self.failures),
        }


@dataclass(frozen=True)
class SeparationCertificate:
    theory: str
    a_d: Mapping[str, DefinednessAxiom]
    a_d_prime: Tuple[str, ...] = ()
    a_e: Tuple[str, ...] = ()
    condition3: Condition3Report = field(default_factory=lambda: Condition3Report(Verdict.CERTIFIED, 0))

    @property
    def a_d_names(self) -> Tuple[str, ...]:
        return tuple(entry.axiom for entry in self.a_d.values())

    def phi(self, symbol: str, args: Tuple[Term, ...]) -> Formula:
        return self.a_d[symbol].instantiate(args)

    def to_dict(self) -> Dict:
        return {
            "theory": self.theory,
            "a_d": {name: entry.axiom for name, entry in sorted(self.a_d.items())},
            "a_d_prime": list(self.a_d_prime),
            "a_e": list(self.a_e),
            "condition3": self.condition3.to_dict(),
        }


def _pattern(t: Term) -> Optional[Tuple[str, Tuple[Var, ...]]]:
    """σ and x̄ when t is σ(x₁, …, x_k) over distinct variables."""
    if not isinstance(t, App) or not all(isinstance(a, Var) for a in t.args):
        return None
    if len(set(t.args)) != len(t.args):
        return None
    return t.symbol.name, t.args


def _definedness_pattern(formula: Formula, var_ctx: Tuple[Var, ...]):
    if len(formula) != 1 or not is_definedness(formula[0]):
        return None
    found = _pattern(atom_terms(canonicalize(formula[0]))[0])
    if found is None or set(found[1]) != set(var_ctx):
        return None
    return found


def _matches_premise(entry: DefinednessAxiom, params: Tuple[Var, ...], rhs: Formula) -> bool:
    renamed = entry.instantiate(params)
    return set(canonical_formula(renamed)) == set(canonical_formula(rhs))


def _partition(theory: Theory) -> Tuple[Dict[str, DefinednessAxiom], List[str], List[str]]:
    a_d: Dict[str, DefinednessAxiom] = {}
    for ax in theory.axioms:
        seq = ax.sequent
        found = _definedness_pattern(seq.rhs, seq.var_ctx)
        if found is None:
            continue
        symbol, params = found
        if symbol in a_d:
            raise NotSeparated(
                f"Symbol '{symbol}' has two definedness axioms: '{a_d[symbol].axiom}' and '{ax.name}'",
                ax.name,
            )
        a_d[symbol] = DefinednessAxiom(symbol, ax.name, params, seq.lhs)

    defining = {entry.axiom for entry in a_d.values()}
    a_d_prime, a_e = [], []
    for ax in theory.axioms:
        if ax.name in defining:
            continue
        seq = ax.sequent
        found = _definedness_pattern(seq.lhs, seq.var_ctx)
        if found is not None and found[0] in a_d and _matches_premise(a_d[found[0]], found[1], seq.rhs):
            a_d_prime.append(ax.name)
        else:
            a_e.append(ax.name)
    return a_d, a_d_prime, a_e


def _required(a_d: Mapping[str, DefinednessAxiom], rhs: Formula) -> List[Tuple[App, Formula]]:
    """(σ(t̄), φ_σ[t̄]) for every application in ψ whose symbol has a definedness axiom."""
    out, seen = [], set()
    for atom in rhs:
        for t in atom_terms(atom):
            for _, sub in positions(t):
                if isinstance(sub, App) and sub not in seen and sub.symbol.name in a_d:
                    seen.add(sub)
                    out.append((sub, a_d[sub.symbol.name].instantiate(sub.args)))
    return out


def _check_condition3(
    theory: Theory, minimal: Theory, a_d: Mapping[str, DefinednessAxiom], a_e: List[str], bound: int
) -> Condition3Report:
    """Bounded check: generic sequents first, then closed instances from the saturation."""
    settings = Helper.get_settings()
    checked, failures, undecided = 0, [], []
    closed = saturate(minimal, bound, settings.fuel)
    for name in a_e:
        seq = theory.axiom(name).sequent
        for sub, phi in _required(a_d, seq.rhs):
            if not phi:
                continue
            checked += 1
            generic = prove(minimal, Sequent(seq.var_ctx, seq.lhs, phi), bound, settings.fuel)
            if generic.certified:
                continue
            where = f"{name}: {sub} needs {format_formula(phi)}"
            verdict = Verdict.CERTIFIED
            for rho in closed.instances(seq.lhs, seq.var_ctx, settings.samples):
                goals = [canonicalize(a) for a in rho.apply(phi)]
                if all(g in closed for g in goals):
                    continue
                if closed.complete and all(max(t.depth for t in atom_terms(g)) <= bound for g in goals):
                    verdict = Verdict.REFUTED
                    break
                verdict = Verdict.INCONCLUSIVE
            if verdict is Verdict.REFUTED:
                failures.append(where)
            elif verdict is Verdict.INCONCLUSIVE or not closed.complete:
                undecided.append(where)
    if failures:
        return Condition3Report(Verdict.REFUTED, bound, checked, tuple(failures))
    if undecided:
        return Condition3Report(Verdict.INCONCLUSIVE, bound, checked, tuple(undecided))
    return Condition3Report(Verdict.CERTIFIED, bound, checked)


def classify_separated(theory: Theory, bound: int) -> Optional[SeparationCertificate]:
    """Split the axioms into A_d, A'_d and A_e; None when some symbol has no definedness axiom.

    Condition 3 is checked at `bound` only and recorded in the certificate.
    """
    a_d, a_d_prime, a_e = _partition(theory)
    missing = [f.name for f in theory.fun_symbols if f.name not in a_d]
    if missing:
        logger.info("🚫 '%s' is not separated: no definedness axiom for %s", theory.name, missing)
        return None
    ordered = {f.name: a_d[f.name] for f in theory.fun_symbols}
    keep = {entry.axiom for entry in ordered.values()} | set(a_e)
    minimal = theory.with_axioms([ax for ax in theory.axioms if ax.name in keep], f"{theory.name}_min")
    condition3 = _check_condition3(theory, minimal, ordered, a_e, bound)
    cert = SeparationCertificate(theory.name, ordered, tuple(a_d_prime), tuple(a_e), condition3)
    logger.info(
        "🧮 '%s' separated: %d A_d, %d A'_d, %d A_e; condition 3 %s at %d",
        theory.name, len(ordered), len(a_d_prime), len(a_e), condition3.verdict.value, bound,
    )
    return cert


def minimal_maximal(cert: SeparationCertificate, theory: Theory) -> Tuple[Theory, Theory]:
    """The subtheory on A_d ∪ A_e, and that subtheory plus one A'_d axiom per symbol."""
    keep = set(cert.a_d_names) | set(cert.a_e)
    axioms = [ax for ax in theory.axioms if ax.name in keep]
    if len(axioms) == len(theory.axioms):
        minimal = theory
    else:
        minimal = theory.with_axioms(axioms, f"{theory.name}_min")

    existing: Dict[str, Axiom] = {}
    for name in cert.a_d_prime:
        ax = theory.axiom(name)
        symbol = _definedness_pattern(ax.sequent.lhs, ax.sequent.var_ctx)[0]
        existing.setdefault(symbol, ax)
    taken = set(theory.axiom_map)
    converse = []
    for symbol, entry in cert.a_d.items():
        if symbol in existing:
            converse.append(existing[symbol])
            continue
        head = App(theory.fun(symbol), entry.params)
        converse.append(
            Axiom(
                fresh_name(f"{symbol}_inv", taken),
                Sequent(entry.params, (Defined(head),), entry.premise or TOP),
            )
        )
    maximal = minimal.with_axioms(minimal.axioms + tuple(converse), f"{theory.name}_max")
    return minimal, maximal
