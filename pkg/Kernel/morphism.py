from dataclasses import dataclass, field, replace
from typing import Dict, Mapping, Optional, Tuple

from Core.Enums.kernel import ObligationStatus
from Core.Utils.exception import SortMismatch, UnknownSymbol, UnknownVariable, UnmappedSymbol
from Kernel.formula import Defined, Eq, Formula, Pred, Sequent, free_variables
from Kernel.substitution import Substitution
from Kernel.symbol import FunSymbol, PredSymbol
from Kernel.term import App, Term, Var
from Kernel.theory import Theory

FunImage = Tuple[Tuple[Var, ...], Term]
PredImage = Tuple[Tuple[Var, ...], Formula]


@dataclass(frozen=True)
class Obligation:
    status: ObligationStatus
    derivations: Tuple = ()
    note: str = ""


def parameters(symbol) -> Tuple[Var, ...]:
    return tuple(Var(f"x{i}", sort) for i, sort in enumerate(symbol.arg_sorts, start=1))


@dataclass(frozen=True, eq=False)
class TheoryMorphism:
    """Interpretation of source symbols as target terms and formulas.

    Symbols missing from fun_map/pred_map go to the same-named target symbol,
    which must have the same signature.
    """

    name: str
    source: Theory
    target: Theory
    fun_map: Mapping[str, FunImage] = field(default_factory=dict)
    pred_map: Mapping[str, PredImage] = field(default_factory=dict)
    obligations: Mapping[str, Obligation] = field(default_factory=dict)

    def __post_init__(self):
        for name, (params, image) in self.fun_map.items():
            symbol = self.source.funs.get(name)
            if symbol is None:
                raise UnknownSymbol(f"Morphism '{self.name}' maps unknown symbol '{name}'")
            self._check_params(name, symbol, params)
            if image.sort != symbol.result_sort:
                raise SortMismatch(f"Image of '{name}' has sort {image.sort}, expected {symbol.result_sort}")
            if not free_variables(image) <= set(params):
                raise UnknownVariable(f"Image of '{name}' mentions variables outside its parameters")
        for name, (params, formula) in self.pred_map.items():
            symbol = self.source.preds.get(name)
            if symbol is None:
                raise UnknownSymbol(f"Morphism '{self.name}' maps unknown predicate '{name}'")
            self._check_params(name, symbol, params)
            if not free_variables(formula) <= set(params):
                raise UnknownVariable(f"Image of '{name}' mentions variables outside its parameters")

    def _check_params(self, name: str, symbol, params: Tuple[Var, ...]) -> None:
        if tuple(p.sort for p in params) != symbol.arg_sorts:
            raise SortMismatch(f"Parameters of '{name}' do not match its signature")

    def image_of(self, symbol: FunSymbol) -> FunImage:
        if symbol.name in self.fun_map:
            return self.fun_map[symbol.name]
        target = self.target.funs.get(symbol.name)
        if target is None or target != symbol:
            raise UnmappedSymbol(f"Morphism '{self.name}' has no image for '{symbol.name}'")
        params = parameters(symbol)
        return params, App(target, params)

    def pred_image_of(self, symbol: PredSymbol) -> PredImage:
        if symbol.name in self.pred_map:
            return self.pred_map[symbol.name]
        target = self.target.preds.get(symbol.name)
        if target is None or target != symbol:
            raise UnmappedSymbol(f"Morphism '{self.name}' has no image for '{symbol.name}'")
        params = parameters(symbol)
        return params, (Pred(target, params),)

    @property
    def fully_certified(self) -> bool:
        return all(
            self.obligations.get(ax.name, Obligation(ObligationStatus.ASSUMED)).status
            is ObligationStatus.CERTIFIED
            for ax in self.source.axioms
        )

    def with_obligations(self, obligations: Mapping[str, Obligation]) -> "TheoryMorphism":
        return replace(self, obligations=dict(obligations))

    def obligation_summary(self) -> Dict[str, str]:
        return {
            ax.name: self.obligations.get(ax.name, Obligation(ObligationStatus.ASSUMED)).status.value
            for ax in self.source.axioms
        }


def _translate_term(f: TheoryMorphism, t: Term, cache: Dict[Term, Term]) -> Term:
    if isinstance(t, Var):
        return t
    hit = cache.get(t)
    if hit is not None:
        return hit
    args = tuple(_translate_term(f, a, cache) for a in t.args)
    params, image = f.image_of(t.symbol)
    out = Substitution(dict(zip(params, args))).apply_term(image)
    cache[t] = out
    return out


def apply_morphism(f: TheoryMorphism, x, _cache: Optional[Dict[Term, Term]] = None):
    """Homomorphic translation of a term, atom, formula or sequent.

    An atom translates to a formula, since predicates map to formulas.
    """
    cache = {} if _cache is None else _cache
    match x:
        case Var() | App():
            return _translate_term(f, x, cache)
        case Eq(lhs=lhs, rhs=rhs):
            return (Eq(_translate_term(f, lhs, cache), _translate_term(f, rhs, cache)),)
        case Defined(term=term):
            return (Defined(_translate_term(f, term, cache)),)
        case Pred(symbol=symbol, args=args):
            params, formula = f.pred_image_of(symbol)
            rho = Substitution(dict(zip(params, (_translate_term(f, a, cache) for a in args))))
            return rho.apply(formula)
        case tuple():
            out = ()
            for atom in x:
                out += apply_morphism(f, atom, cache)
            return out
        case Sequent(var_ctx=var_ctx, lhs=lhs, rhs=rhs):
            return Sequent(var_ctx, apply_morphism(f, lhs, cache), apply_morphism(f, rhs, cache))
    raise TypeError(f"Cannot translate {x!r}")


def identity_morphism(theory: Theory) -> TheoryMorphism:
    certified = {
        ax.name: Obligation(ObligationStatus.CERTIFIED, note="identity") for ax in theory.axioms
    }
    return TheoryMorphism(f"id_{theory.name}", theory, theory, obligations=certified)


def inclusion_morphism(source: Theory, target: Theory, name: Optional[str] = None) -> TheoryMorphism:
    """Same-named symbols; axioms present verbatim in the target are certified."""
    for symbol in source.fun_symbols:
        if target.funs.get(symbol.name) != symbol:
            raise UnmappedSymbol(f"'{symbol.name}' is not a symbol of '{target.name}'")
    for symbol in source.pred_symbols:
        if target.preds.get(symbol.name) != symbol:
            raise UnmappedSymbol(f"'{symbol.name}' is not a predicate of '{target.name}'")
    target_sequents = {ax.sequent for ax in target.axioms}
    obligations = {
        ax.name: Obligation(
            ObligationStatus.CERTIFIED if ax.sequent in target_sequents else ObligationStatus.ASSUMED,
            note="inclusion",
        )
        for ax in source.axioms
    }
    return TheoryMorphism(
        name or f"{source.name}_to_{target.name}", source, target, obligations=obligations
    )


def compose_morphisms(g: TheoryMorphism, f: TheoryMorphism, name: Optional[str] = None) -> TheoryMorphism:
    """g ∘ f, with every image computed by two-pass translation."""
    fun_map = {}
    for symbol in f.source.fun_symbols:
        params = parameters(symbol)
        fun_map[symbol.name] = (params, apply_morphism(g, apply_morphism(f, App(symbol, params))))
    pred_map = {}
    for symbol in f.source.pred_symbols:
        params = parameters(symbol)
        pred_map[symbol.name] = (params, apply_morphism(g, apply_morphism(f, Pred(symbol, params))))
    return TheoryMorphism(name or f"{g.name}_o_{f.name}", f.source, g.target, fun_map, pred_map)
