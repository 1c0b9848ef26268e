from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from Core.Enums.kernel import RuleName
from Core.Utils.exception import (
    LhsDrift,
    RuleMismatch,
    SideConditionFailed,
    UnknownAxiom,
)
from Core.Utils.logger import Logger
from Kernel.formula import Atom, Eq, Pred, Sequent, canonical_formula, canonicalize, free_variables
from Kernel.substitution import Substitution
from Kernel.term import App, Term, Var
from Kernel.theory import Theory

logger = Logger.get_logger()


@dataclass(frozen=True)
class NhPayload:
    index: int


@dataclass(frozen=True)
class NlPayload:
    """ψ and its placeholder variable x: premises a = b and ψ[a/x], conclusion ψ[b/x]."""

    formula: Atom
    var: Var


@dataclass(frozen=True)
class NaPayload:
    axiom: str
    terms: Tuple[Term, ...]
    conjunct: int


@dataclass(frozen=True)
class ArgPayload:
    index: int


Payload = Union[NhPayload, NlPayload, NaPayload, ArgPayload, None]


@dataclass(frozen=True, eq=False)
class DerivationTree:
    rule: RuleName
    conclusion: Sequent
    premises: Tuple["DerivationTree", ...] = ()
    payload: Payload = None

    @property
    def atom(self) -> Atom:
        return self.conclusion.rhs[0]

    def size(self) -> int:
        seen: Dict[int, int] = {}

        def count(node: "DerivationTree") -> int:
            if id(node) not in seen:
                seen[id(node)] = 1 + sum(count(p) for p in node.premises)
            return seen[id(node)]

        return count(self)

    def rules_used(self) -> List[str]:
        out, stack, seen = set(), [self], set()
        while stack:
            node = stack.pop()
            if id(node) in seen:
                continue
            seen.add(id(node))
            out.add(node.rule.value)
            stack.extend(node.premises)
        return sorted(out)

    def to_dict(self) -> Dict:
        payload: Dict = {}
        match self.payload:
            case NhPayload(index=index) | ArgPayload(index=index):
                payload = {"index": index}
            case NlPayload(formula=formula, var=var):
                payload = {"formula": str(formula), "var": var.name}
            case NaPayload(axiom=axiom, terms=terms, conjunct=conjunct):
                payload = {"axiom": axiom, "terms": [str(t) for t in terms], "conjunct": conjunct}
        return {
            "rule": self.rule.value,
            "conclusion": str(self.atom),
            "payload": payload,
            "premises": [p.to_dict() for p in self.premises],
        }


def _fail(error, message: str, path: Tuple[int, ...]):
    raise error(message, path)


def _expect_premises(node: DerivationTree, count: int, path) -> None:
    if len(node.premises) != count:
        _fail(RuleMismatch, f"rule {node.rule.value} needs {count} premises, got {len(node.premises)}", path)


def _premise_atom(node: DerivationTree, index: int) -> Atom:
    return canonicalize(node.premises[index].atom)


def _as_eq(atom: Atom, node: DerivationTree, path) -> Eq:
    if not isinstance(atom, Eq):
        _fail(RuleMismatch, f"rule {node.rule.value} expects an equation, got {atom}", path)
    return atom


def _check_node(theory: Theory, node: DerivationTree, path: Tuple[int, ...]) -> None:
    seq = node.conclusion
    if len(seq.rhs) != 1:
        _fail(RuleMismatch, "conclusion must have exactly one atom", path)
    if free_variables(seq.rhs) - set(seq.var_ctx):
        _fail(SideConditionFailed, f"conclusion {seq.rhs[0]} mentions variables outside V", path)
    lhs = canonical_formula(seq.lhs)
    for index, premise in enumerate(node.premises, start=1):
        if premise.conclusion.var_ctx != seq.var_ctx or canonical_formula(premise.conclusion.lhs) != lhs:
            _fail(LhsDrift, "premise left-hand side differs from the conclusion's", path + (index,))

    conclusion = canonicalize(seq.rhs[0])
    match node.rule:
        case RuleName.NV:
            _expect_premises(node, 0, path)
            eq = _as_eq(conclusion, node, path)
            if not (isinstance(eq.lhs, Var) and eq.lhs == eq.rhs and eq.lhs in seq.var_ctx):
                _fail(SideConditionFailed, f"nv concludes {eq}, not x def for x in V", path)

        case RuleName.NS:
            _expect_premises(node, 1, path)
            premise = _as_eq(_premise_atom(node, 0), node, path)
            if conclusion != Eq(premise.rhs, premise.lhs):
                _fail(RuleMismatch, f"ns from {premise} cannot conclude {conclusion}", path)

        case RuleName.NH:
            _expect_premises(node, 0, path)
            if not isinstance(node.payload, NhPayload):
                _fail(RuleMismatch, "nh needs a conjunct index", path)
            index = node.payload.index
            if not 0 <= index < len(lhs):
                _fail(SideConditionFailed, f"nh index {index} out of range", path)
            if lhs[index] != conclusion:
                _fail(RuleMismatch, f"nh conjunct {index} is {lhs[index]}, not {conclusion}", path)

        case RuleName.NL:
            _expect_premises(node, 2, path)
            if not isinstance(node.payload, NlPayload):
                _fail(RuleMismatch, "nl needs the formula ψ and its variable", path)
            eq = _as_eq(_premise_atom(node, 0), node, path)
            psi, var = node.payload.formula, node.payload.var
            if var.sort != eq.lhs.sort:
                _fail(SideConditionFailed, f"nl variable {var.name} has sort {var.sort}, equation {eq.lhs.sort}", path)
            before = canonicalize(Substitution({var: eq.lhs}).apply(psi))
            after = canonicalize(Substitution({var: eq.rhs}).apply(psi))
            if _premise_atom(node, 1) != before:
                _fail(RuleMismatch, f"nl second premise should be {before}", path)
            if conclusion != after:
                _fail(RuleMismatch, f"nl should conclude {after}", path)

        case RuleName.NP | RuleName.NF:
            _expect_premises(node, 1, path)
            if not isinstance(node.payload, ArgPayload):
                _fail(RuleMismatch, f"{node.rule.value} needs an argument index", path)
            premise = _premise_atom(node, 0)
            if node.rule is RuleName.NP:
                if not isinstance(premise, Pred) or premise.symbol.name not in theory.preds:
                    _fail(RuleMismatch, f"np premise {premise} is not a predicate of the theory", path)
                args = premise.args
            else:
                eq = _as_eq(premise, node, path)
                if not (eq.lhs == eq.rhs and isinstance(eq.lhs, App)) or eq.lhs.symbol.name not in theory.funs:
                    _fail(RuleMismatch, f"nf premise {premise} is not a defined application", path)
                args = eq.lhs.args
            index = node.payload.index
            if not 0 <= index < len(args):
                _fail(SideConditionFailed, f"argument index {index} out of range", path)
            if conclusion != Eq(args[index], args[index]):
                _fail(RuleMismatch, f"{node.rule.value} should conclude {args[index]} def", path)

        case RuleName.NE1 | RuleName.NE2:
            _expect_premises(node, 1, path)
            eq = _as_eq(_premise_atom(node, 0), node, path)
            side = eq.lhs if node.rule is RuleName.NE1 else eq.rhs
            if conclusion != Eq(side, side):
                _fail(RuleMismatch, f"{node.rule.value} should conclude {side} def", path)

        case RuleName.NA:
            _check_axiom_instance(theory, node, conclusion, path)


def _check_axiom_instance(theory: Theory, node: DerivationTree, conclusion: Atom, path) -> None:
    payload = node.payload
    if not isinstance(payload, NaPayload):
        _fail(RuleMismatch, "na needs an axiom instance", path)
    axiom = theory.axiom_map.get(payload.axiom)
    if axiom is None:
        _fail(UnknownAxiom, f"axiom '{payload.axiom}' is not in theory '{theory.name}'", path)
    params = axiom.sequent.var_ctx
    if len(payload.terms) != len(params):
        _fail(SideConditionFailed, f"axiom '{axiom.name}' takes {len(params)} terms", path)
    for var, term in zip(params, payload.terms):
        if var.sort != term.sort:
            _fail(SideConditionFailed, f"term {term} has sort {term.sort}, {var.name} needs {var.sort}", path)
    rho = Substitution(dict(zip(params, payload.terms)))
    required = [Eq(t, t) for t in payload.terms] + [
        canonicalize(rho.apply(atom)) for atom in axiom.sequent.lhs
    ]
    _expect_premises(node, len(required), path)
    for index, expected in enumerate(required):
        if _premise_atom(node, index) != expected:
            _fail(RuleMismatch, f"na premise {index + 1} should be {expected}", path)
    if not 0 <= payload.conjunct < len(axiom.sequent.rhs):
        _fail(SideConditionFailed, f"conjunct {payload.conjunct} out of range for '{axiom.name}'", path)
    expected = canonicalize(rho.apply(axiom.sequent.rhs[payload.conjunct]))
    if conclusion != expected:
        _fail(RuleMismatch, f"na should conclude {expected}", path)


def check_derivation(theory: Theory, tree: DerivationTree) -> Sequent:
    """The tree's conclusion, once every node matches its rule schema."""
    checked = set()

    def walk(node: DerivationTree, path: Tuple[int, ...]) -> None:
        if id(node) in checked:
            return
        for index, premise in enumerate(node.premises, start=1):
            walk(premise, path + (index,))
        _check_node(theory, node, path)
        checked.add(id(node))

    walk(tree, ())
    logger.debug("✅ Derivation of %s checked (%d nodes)", tree.atom, len(checked))
    return tree.conclusion


def leaf(rule: RuleName, conclusion: Sequent, payload: Optional[Payload] = None) -> DerivationTree:
    return DerivationTree(rule, conclusion, (), payload)
