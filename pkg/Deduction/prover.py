from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from Core.Enums.kernel import ObligationStatus, RuleName, Verdict
from Core.Utils.logger import Logger
from Deduction.derivation import (
    DerivationTree,
    NaPayload,
    NhPayload,
    NlPayload,
    check_derivation,
)
from Deduction.saturation import FactSet, saturate
from Kernel.formula import TOP, Atom, Defined, Formula, Sequent, atom_depth, canonicalize, map_atom
from Kernel.morphism import Obligation, TheoryMorphism, apply_morphism
from Kernel.substitution import Substitution
from Kernel.symbol import FunSymbol
from Kernel.term import App, Term, Var
from Kernel.theory import Axiom, Theory

logger = Logger.get_logger()


def split_sequent(sequent: Sequent) -> List[Sequent]:
    """One sequent per right-hand conjunct, same V and left-hand side."""
    return [Sequent(sequent.var_ctx, sequent.lhs, (atom,)) for atom in sequent.rhs]


@dataclass(frozen=True)
class Freshening:
    """A theory with the sequent's variables as constants and its hypotheses as axioms."""

    theory: Theory
    goal: Formula
    constants: Tuple[Tuple[Var, FunSymbol], ...] = ()
    hypothesis_axioms: Tuple[str, ...] = ()
    variable_axioms: Tuple[Tuple[str, Var], ...] = ()

    def __iter__(self):
        return iter((self.theory, self.goal))

    @property
    def substitution(self) -> Substitution:
        return Substitution({var: App(symbol, ()) for var, symbol in self.constants})

    def restore(self, t: Term) -> Term:
        """The open term a closed term of the freshened theory stands for."""
        back = {symbol.name: var for var, symbol in self.constants}

        def walk(u: Term) -> Term:
            if isinstance(u, Var):
                return u
            if not u.args and u.symbol.name in back:
                return back[u.symbol.name]
            return App(u.symbol, tuple(walk(a) for a in u.args))

        return walk(t) if back else t


def fresh_name(name: str, taken: set) -> str:
    candidate, counter = name, 1
    while candidate in taken:
        candidate = f"{name}_{counter}"
        counter += 1
    taken.add(candidate)
    return candidate


def freshen(theory: Theory, sequent: Sequent) -> Freshening:
    if not sequent.var_ctx and not sequent.lhs:
        return Freshening(theory, sequent.rhs)

    symbol_names = set(theory.funs) | set(theory.preds)
    axiom_names = set(theory.axiom_map)
    constants = []
    for var in sequent.var_ctx:
        constants.append((var, FunSymbol(fresh_name(f"c_{var.name}", symbol_names), (), var.sort)))
    rho = Substitution({var: App(symbol, ()) for var, symbol in constants})

    axioms, variable_axioms, hypothesis_axioms = [], [], []
    for var, symbol in constants:
        name = fresh_name(f"fresh_{var.name}", axiom_names)
        axioms.append(Axiom(name, Sequent((), TOP, (Defined(App(symbol, ())),))))
        variable_axioms.append((name, var))
    for index, atom in enumerate(sequent.lhs, start=1):
        name = fresh_name(f"hyp_{index}", axiom_names)
        axioms.append(Axiom(name, Sequent((), TOP, (rho.apply(atom),))))
        hypothesis_axioms.append(name)

    extended = theory.extend(
        name=f"{theory.name}+fresh",
        funs=[symbol for _, symbol in constants],
        axioms=axioms,
    )
    return Freshening(
        extended,
        rho.apply(sequent.rhs),
        tuple(constants),
        tuple(hypothesis_axioms),
        tuple(variable_axioms),
    )


@dataclass(frozen=True)
class ProofOutcome:
    sequent: Sequent
    verdict: Verdict
    derivations: Tuple[DerivationTree, ...] = ()
    missing: Tuple[Atom, ...] = ()
    complete: bool = False
    depth: int = 0
    fuel: int = 0
    facts: int = field(default=0, compare=False)

    @property
    def certified(self) -> bool:
        return self.verdict is Verdict.CERTIFIED

    @property
    def refutable(self) -> bool:
        """Missing atoms are underivable: the saturation was complete and they fit its bound."""
        return (
            not self.certified
            and self.complete
            and all(atom_depth(a) <= self.depth for a in self.missing)
        )

    def to_dict(self) -> Dict:
        return {
            "sequent": str(self.sequent),
            "verdict": self.verdict.value,
            "missing": [str(a) for a in self.missing],
            "complete": self.complete,
            "derivation_sizes": [d.size() for d in self.derivations],
        }


class _Translator:
    """Maps closed trees of the freshened theory back to trees over φ ⊢_V."""

    def __init__(self, fresh: Freshening, sequent: Sequent):
        self.sequent = sequent
        self.by_constant: Dict[str, Var] = {symbol.name: var for var, symbol in fresh.constants}
        self.hypotheses = {name: i for i, name in enumerate(fresh.hypothesis_axioms)}
        self.variables = dict(fresh.variable_axioms)
        taken = {v.name for v in sequent.var_ctx}
        self.hole = fresh_name("z", taken)
        self.memo: Dict[int, DerivationTree] = {}
        self.term_memo: Dict[Term, Term] = {}

    def term(self, t: Term) -> Term:
        if isinstance(t, Var):
            return Var(self.hole, t.sort)
        hit = self.term_memo.get(t)
        if hit is None:
            if not t.args and t.symbol.name in self.by_constant:
                hit = self.by_constant[t.symbol.name]
            else:
                hit = App(t.symbol, tuple(self.term(a) for a in t.args))
            self.term_memo[t] = hit
        return hit

    def atom(self, atom: Atom) -> Atom:
        return map_atom(atom, self.term)

    def tree(self, node: DerivationTree) -> DerivationTree:
        key = id(node)
        if key in self.memo:
            return self.memo[key]
        conclusion = Sequent(self.sequent.var_ctx, self.sequent.lhs, (self.atom(node.atom),))
        rule, payload, premises = node.rule, node.payload, node.premises
        if rule is RuleName.NA and payload.axiom in self.hypotheses:
            rule, payload, premises = RuleName.NH, NhPayload(self.hypotheses[payload.axiom]), ()
        elif rule is RuleName.NA and payload.axiom in self.variables:
            rule, payload, premises = RuleName.NV, None, ()
        elif rule is RuleName.NA:
            payload = NaPayload(payload.axiom, tuple(self.term(t) for t in payload.terms), payload.conjunct)
        elif rule is RuleName.NL:
            payload = NlPayload(self.atom(payload.formula), Var(self.hole, payload.var.sort))
        out = DerivationTree(rule, conclusion, tuple(self.tree(p) for p in premises), payload)
        self.memo[key] = out
        return out


def prove(theory: Theory, sequent: Sequent, depth: int, fuel: int) -> ProofOutcome:
    """Bounded search: freshen, saturate, read back and check one tree per conjunct.

    Never refutes; `complete` tells callers whether absent atoms are underivable.
    """
    fresh = freshen(theory, sequent)
    facts: FactSet = saturate(fresh.theory, depth, fuel)
    goals = [canonicalize(a) for a in fresh.goal]
    missing = tuple(atom for atom, goal in zip(sequent.rhs, goals) if goal not in facts.facts)
    if missing:
        logger.debug("🔍 Inconclusive at depth %d, fuel %d: %s", depth, fuel, sequent)
        return ProofOutcome(sequent, Verdict.INCONCLUSIVE, (), missing, facts.complete, depth, fuel, len(facts))

    translator = _Translator(fresh, sequent)
    closed_memo: Dict = {}
    derivations = []
    for part, goal in zip(split_sequent(sequent), goals):
        tree = translator.tree(facts.derivation(goal, closed_memo))
        check_derivation(theory, tree)
        derivations.append(tree)
    logger.debug("✅ Certified %s at depth %d", sequent, depth)
    return ProofOutcome(sequent, Verdict.CERTIFIED, tuple(derivations), (), facts.complete, depth, fuel, len(facts))


def certify_obligations(f: TheoryMorphism, depth: int, fuel: int) -> TheoryMorphism:
    """Prove the image of every source axiom in the target."""
    obligations = {}
    for axiom in f.source.axioms:
        image = apply_morphism(f, axiom.sequent)
        outcome = prove(f.target, image, depth, fuel)
        if outcome.certified:
            obligations[axiom.name] = Obligation(ObligationStatus.CERTIFIED, outcome.derivations)
        elif outcome.refutable:
            obligations[axiom.name] = Obligation(ObligationStatus.REFUTED, note="complete saturation")
        else:
            obligations[axiom.name] = Obligation(ObligationStatus.ASSUMED, note="inconclusive at bound")
    certified = sum(o.status is ObligationStatus.CERTIFIED for o in obligations.values())
    logger.info("📝 Morphism '%s': %d/%d obligations certified", f.name, certified, len(obligations))
    return f.with_obligations(obligations)


def verdict_of(outcome: ProofOutcome) -> Verdict:
    """Three-valued reading of a bounded proof attempt."""
    if outcome.certified:
        return Verdict.CERTIFIED
    return Verdict.REFUTED if outcome.refutable else Verdict.INCONCLUSIVE


def worst(verdicts) -> Verdict:
    verdicts = set(verdicts)
    for v in (Verdict.REFUTED, Verdict.INCONCLUSIVE):
        if v in verdicts:
            return v
    return Verdict.CERTIFIED
