import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from Core.Enums.kernel import RuleName
from Core.Utils.logger import Logger
from Deduction.derivation import ArgPayload, DerivationTree, NaPayload, NlPayload, Payload
from Kernel.formula import Atom, Eq, Formula, Pred, Sequent, atom_depth, canonicalize
from Kernel.sort import Sort
from Kernel.substitution import Substitution, match_atom
from Kernel.term import App, Term, Var, replace_at, term_key
from Kernel.theory import Axiom, Theory

logger = Logger.get_logger()

_HOLE = "_z"


def atom_key(atom: Atom) -> tuple:
    if isinstance(atom, Eq):
        return (0, max(atom.lhs.depth, atom.rhs.depth), atom.lhs.text, atom.rhs.text)
    return (1, atom_depth(atom), atom.symbol.name, tuple(a.text for a in atom.args))


@dataclass(frozen=True)
class Justification:
    rule: RuleName
    premises: Tuple[Atom, ...] = ()
    payload: Payload = None


class _Index:
    """Lookup tables over a set of closed canonical atoms."""

    def __init__(self):
        self.facts: Dict[Atom, None] = {}
        self.defined: Dict[Sort, Dict[Term, None]] = {}
        self.eqs: Dict[Term, Dict[Term, None]] = {}
        self.by_head: Dict[str, Dict[Eq, None]] = {}
        self.eq_by_sort: Dict[Sort, Dict[Eq, None]] = {}
        self.preds: Dict[str, Dict[Pred, None]] = {}

    def add(self, atom: Atom) -> None:
        self.facts[atom] = None
        if isinstance(atom, Eq):
            lhs, rhs = atom.lhs, atom.rhs
            if lhs == rhs:
                self.defined.setdefault(lhs.sort, {})[lhs] = None
            else:
                self.eqs.setdefault(lhs, {})[rhs] = None
                self.eq_by_sort.setdefault(lhs.sort, {})[atom] = None
            if isinstance(lhs, App):
                self.by_head.setdefault(lhs.symbol.name, {})[atom] = None
        else:
            self.preds.setdefault(atom.symbol.name, {})[atom] = None

    def candidates(self, pattern: Atom, rho: Dict[Var, Term]) -> Iterable[Atom]:
        if isinstance(pattern, Pred):
            return self.preds.get(pattern.symbol.name, {})
        lhs, rhs = pattern.lhs, pattern.rhs
        if isinstance(lhs, Var) and lhs in rho:
            lhs = rho[lhs]
        if isinstance(rhs, Var) and rhs in rho:
            rhs = rho[rhs]
        if isinstance(lhs, App):
            if lhs.symbol.name in self.by_head:
                return self.by_head[lhs.symbol.name]
            return ()
        if isinstance(rhs, App):
            # equalities are stored in both orientations
            return (
                Eq(a.rhs, a.lhs) for a in self.by_head.get(rhs.symbol.name, {})
            )
        if pattern.lhs == pattern.rhs:
            return (Eq(t, t) for t in self.defined.get(lhs.sort, {}))
        return list(self.eq_by_sort.get(lhs.sort, {})) + [
            Eq(t, t) for t in self.defined.get(lhs.sort, {})
        ]


@dataclass(eq=False)
class FactSet:
    """Closed atoms derived by forward chaining, with the first derivation found."""

    theory: Theory
    bound: int
    fuel: int
    facts: Dict[Atom, Justification] = field(default_factory=dict)
    rounds: int = 0
    exhausted: bool = False
    truncated: bool = False
    _index: _Index = field(default_factory=_Index, repr=False)

    def __contains__(self, atom: Atom) -> bool:
        return canonicalize(atom) in self.facts

    def __len__(self) -> int:
        return len(self.facts)

    def __iter__(self) -> Iterator[Atom]:
        return iter(self.facts)

    @property
    def complete(self) -> bool:
        """Fixed point reached with nothing dropped at the depth bound."""
        return not self.exhausted and not self.truncated

    def is_defined(self, t: Term) -> bool:
        return Eq(t, t) in self.facts

    def defined_terms(self, sort: Optional[Sort] = None) -> List[Term]:
        if sort is not None:
            return list(self._index.defined.get(sort, {}))
        return [t for bucket in self._index.defined.values() for t in bucket]

    def equal_to(self, t: Term) -> List[Term]:
        return list(self._index.eqs.get(t, {}))

    def equalities(self) -> List[Tuple[Term, Term]]:
        """Pairs (a, b), a ≠ b, with a = b derived; both orientations."""
        return [(a.lhs, a.rhs) for a in self.facts if isinstance(a, Eq) and a.lhs != a.rhs]

    def justification(self, atom: Atom) -> Justification:
        return self.facts[canonicalize(atom)]

    def derivation(self, atom: Atom, _memo: Optional[Dict[Atom, DerivationTree]] = None) -> DerivationTree:
        """Read back a closed natural-deduction tree for a derived atom."""
        memo = {} if _memo is None else _memo
        atom = canonicalize(atom)
        stack: List[Tuple[Atom, bool]] = [(atom, False)]
        while stack:
            current, expanded = stack.pop()
            if current in memo:
                continue
            just = self.facts[current]
            if not expanded:
                stack.append((current, True))
                stack.extend((p, False) for p in just.premises if p not in memo)
                continue
            memo[current] = DerivationTree(
                just.rule,
                Sequent((), (), (current,)),
                tuple(memo[p] for p in just.premises),
                just.payload,
            )
        return memo[atom]

    def instances(
        self, formula: Formula, var_ctx: Tuple[Var, ...], limit: Optional[int] = None
    ) -> List[Substitution]:
        """Closed ρ on var_ctx with every atom of formula[ρ] derived.

        Variables the formula does not bind range over the derived-defined
        terms of their sort.
        """
        patterns = tuple(canonicalize(a) for a in formula)
        out: List[Substitution] = []

        def full() -> bool:
            return limit is not None and len(out) >= limit

        def extend(i: int, rho: Dict[Var, Term]) -> None:
            if i < len(patterns):
                for fact in list(self._index.candidates(patterns[i], rho)):
                    if full():
                        return
                    matched = match_atom(patterns[i], fact, rho)
                    if matched is not None:
                        extend(i + 1, matched)
                return
            free = [v for v in var_ctx if v not in rho]
            for terms in itertools.product(*(self.defined_terms(v.sort) for v in free)):
                if full():
                    return
                out.append(Substitution({**rho, **dict(zip(free, terms))}))

        extend(0, {})
        return out

    def summary(self) -> Dict:
        return {
            "facts": len(self.facts),
            "rounds": self.rounds,
            "exhausted": self.exhausted,
            "truncated": self.truncated,
            "complete": self.complete,
        }


@dataclass(frozen=True)
class _Rule:
    axiom: Axiom
    definedness: Tuple[Eq, ...]
    hypotheses: Tuple[Atom, ...]

    @property
    def patterns(self) -> Tuple[Atom, ...]:
        # hypotheses bind variables cheaply; bare variable ranges go last
        return self.hypotheses + self.definedness


def _compile(theory: Theory) -> List[_Rule]:
    return [
        _Rule(
            axiom,
            tuple(Eq(v, v) for v in axiom.sequent.var_ctx),
            tuple(canonicalize(a) for a in axiom.sequent.lhs),
        )
        for axiom in theory.axioms
    ]


class _Saturator:
    def __init__(self, theory: Theory, bound: int, fuel: int):
        self.result = FactSet(theory, bound, fuel)
        self.index = self.result._index
        self.rules = _compile(theory)
        self.parents: Dict[Term, List[Tuple[App, int]]] = {}
        self.pred_parents: Dict[Term, List[Tuple[Pred, int]]] = {}
        self.pending: Dict[Atom, Justification] = {}

    # -- candidate collection -------------------------------------------------

    def propose(self, atom: Atom, just: Justification) -> None:
        if atom in self.result.facts or atom in self.pending:
            return
        if atom_depth(atom) > self.result.bound:
            self.result.truncated = True
            return
        self.pending[atom] = just
        if isinstance(atom, Eq) and atom.lhs != atom.rhs:
            mirror = Eq(atom.rhs, atom.lhs)
            if mirror not in self.result.facts and mirror not in self.pending:
                self.pending[mirror] = Justification(RuleName.NS, (atom,))

    def _solutions(
        self, patterns: Tuple[Atom, ...], sources: Tuple[str, ...], rho: Dict[Var, Term],
        delta: _Index,
    ) -> Iterator[Dict[Var, Term]]:
        if not patterns:
            yield rho
            return
        pattern, source = patterns[0], sources[0]
        index = delta if source == "delta" else self.index
        for fact in index.candidates(pattern, rho):
            if source == "old" and fact in delta.facts:
                continue
            if source != "delta" and fact not in self.index.facts:
                continue
            extended = match_atom(pattern, fact, rho)
            if extended is not None:
                yield from self._solutions(patterns[1:], sources[1:], extended, delta)

    def fire(self, rule: _Rule, delta: Optional[_Index]) -> None:
        patterns = rule.patterns
        if delta is None:
            # seed round: only premise-free axioms can fire
            if patterns:
                return
            self._conclude(rule, {})
            return
        for i in range(len(patterns)):
            order = (patterns[i],) + patterns[:i] + patterns[i + 1:]
            sources = ("delta",) + ("old",) * i + ("full",) * (len(patterns) - i - 1)
            for rho in self._solutions(order, sources, {}, delta):
                self._conclude(rule, rho)

    def _conclude(self, rule: _Rule, rho: Dict[Var, Term]) -> None:
        params = rule.axiom.sequent.var_ctx
        terms = tuple(rho[v] for v in params)
        subst = Substitution(dict(rho))
        premises = tuple(Eq(t, t) for t in terms) + tuple(
            canonicalize(subst.apply(a)) for a in rule.hypotheses
        )
        for j, atom in enumerate(rule.axiom.sequent.rhs):
            conclusion = canonicalize(subst.apply(atom))
            self.propose(
                conclusion,
                Justification(RuleName.NA, premises, NaPayload(rule.axiom.name, terms, j)),
            )

    def close(self, fact: Atom) -> None:
        """Structural consequences of one new fact against everything known."""
        index = self.index
        if isinstance(fact, Pred):
            for i, arg in enumerate(fact.args):
                self.propose(Eq(arg, arg), Justification(RuleName.NP, (fact,), ArgPayload(i)))
                for other in list(index.eqs.get(arg, {})):
                    self._replace_in_pred(fact, i, arg, other)
            return

        a, b = fact.lhs, fact.rhs
        if a == b:
            if isinstance(a, App):
                for i, arg in enumerate(a.args):
                    self.propose(Eq(arg, arg), Justification(RuleName.NF, (fact,), ArgPayload(i)))
                    for other in list(index.eqs.get(arg, {})):
                        self._replace_in_term(a, i, arg, other)
            return

        self.propose(Eq(a, a), Justification(RuleName.NE1, (fact,)))
        self.propose(Eq(b, b), Justification(RuleName.NE2, (fact,)))
        hole = Var(_HOLE, a.sort)
        for c in list(index.eqs.get(b, {})):
            if c != a:
                self.propose(
                    Eq(a, c),
                    Justification(RuleName.NL, (Eq(b, c), fact), NlPayload(Eq(a, hole), hole)),
                )
        for parent, i in list(self.parents.get(a, ())):
            self._replace_in_term(parent, i, a, b)
        for pred, i in list(self.pred_parents.get(a, ())):
            self._replace_in_pred(pred, i, a, b)

    def _replace_in_term(self, parent: App, i: int, old: Term, new: Term) -> None:
        """parent = parent[i := new] from old = new, by nl."""
        hole = Var(_HOLE, old.sort)
        psi = Eq(parent, replace_at(parent, (i + 1,), hole))
        target = replace_at(parent, (i + 1,), new)
        self.propose(
            Eq(parent, target),
            Justification(RuleName.NL, (Eq(old, new), Eq(parent, parent)), NlPayload(psi, hole)),
        )

    def _replace_in_pred(self, pred: Pred, i: int, old: Term, new: Term) -> None:
        hole = Var(_HOLE, old.sort)
        args = list(pred.args)
        args[i] = hole
        psi = Pred(pred.symbol, tuple(args))
        args[i] = new
        self.propose(
            Pred(pred.symbol, tuple(args)),
            Justification(RuleName.NL, (Eq(old, new), pred), NlPayload(psi, hole)),
        )

    # -- rounds ---------------------------------------------------------------

    def commit(self) -> _Index:
        delta = _Index()
        for atom in sorted(self.pending, key=atom_key):
            self.result.facts[atom] = self.pending[atom]
            self.index.add(atom)
            delta.add(atom)
            if isinstance(atom, Eq) and atom.lhs == atom.rhs and isinstance(atom.lhs, App):
                for i, arg in enumerate(atom.lhs.args):
                    self.parents.setdefault(arg, []).append((atom.lhs, i))
            elif isinstance(atom, Pred):
                for i, arg in enumerate(atom.args):
                    self.pred_parents.setdefault(arg, []).append((atom, i))
        self.pending = {}
        return delta

    def run(self) -> FactSet:
        for rule in self.rules:
            self.fire(rule, None)
        delta = self.commit()
        self.result.rounds = 1
        while delta.facts and self.result.rounds < self.result.fuel:
            for fact in sorted(delta.facts, key=atom_key):
                self.close(fact)
            for rule in self.rules:
                self.fire(rule, delta)
            delta = self.commit()
            self.result.rounds += 1
            logger.debug("🔁 Saturation round %d: %d new facts", self.result.rounds, len(delta.facts))
        self.result.exhausted = bool(delta.facts)
        return self.result


@lru_cache(maxsize=128)
def saturate(theory: Theory, depth: int, fuel: int) -> FactSet:
    """Forward-chain the natural-deduction rules over closed terms of depth ≤ `depth`.

    Runs at most `fuel` rounds; `exhausted` is set when rounds ran out before
    a fixed point, `truncated` when some conclusion exceeded the depth bound.
    """
    facts = _Saturator(theory, depth, fuel).run() if fuel > 0 else FactSet(theory, depth, fuel)
    logger.debug(
        "📚 Saturated '%s' at depth %d, fuel %d: %d facts in %d rounds (complete=%s)",
        theory.name, depth, fuel, len(facts), facts.rounds, facts.complete,
    )
    return facts
