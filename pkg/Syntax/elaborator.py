from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Tuple

from Core.Enums.kernel import EntryKind
from Core.Utils.exception import (
    ArityMismatch,
    DuplicateName,
    OutOfOrderReference,
    UnknownName,
    UnknownSymbol,
    UnknownVariable,
)
from Core.Utils.helper import Helper
from Core.Utils.logger import Logger
from Kernel.formula import Defined, Eq, Formula, Pred, Sequent
from Kernel.morphism import TheoryMorphism
from Kernel.sort import Sort
from Kernel.symbol import FunSymbol, PredSymbol
from Kernel.term import App, Term, Var
from Kernel.theory import Axiom, Theory
from Morita.telescope import Telescope, check_telescope_syntax, default_kind, variable_sort
from Stdlib.base import base_theory
from Syntax.ast import (
    AppNode,
    AxiomDecl,
    BareNode,
    DefNode,
    EqNode,
    FormulaNode,
    FunDecl,
    FunMap,
    ImportDecl,
    MorphismBlock,
    NameRef,
    PragmaDecl,
    PredDecl,
    SortRef,
    TelescopeDecl,
    TermNode,
    TheoryBlock,
    TheoryFile,
)

logger = Logger.get_logger()

Resolver = Callable[[str, int], Theory]


@dataclass
class Workspace:
    """Everything a theory file declares, by name and in declaration order."""

    theories: Dict[str, Theory] = field(default_factory=dict)
    telescopes: Dict[str, Dict[str, Telescope]] = field(default_factory=dict)
    morphisms: Dict[str, TheoryMorphism] = field(default_factory=dict)
    declared: List[str] = field(default_factory=list)

    def theory(self, name: Optional[str] = None) -> Theory:
        if name is None:
            if not self.declared:
                raise UnknownName("The file declares no theory")
            name = self.declared[-1]
        if name not in self.theories:
            raise UnknownName(f"Unknown theory '{name}'")
        return self.theories[name]

    def telescope(self, name: str, theory: Optional[str] = None) -> Tuple[Theory, Telescope]:
        scopes = [theory] if theory else list(reversed(self.declared))
        for scope in scopes:
            if name in self.telescopes.get(scope, {}):
                return self.theories[scope], self.telescopes[scope][name]
        raise UnknownName(f"Unknown telescope '{name}'")

    def morphism(self, name: str) -> TheoryMorphism:
        if name not in self.morphisms:
            raise UnknownName(f"Unknown morphism '{name}'")
        return self.morphisms[name]


def _stdlib_resolver(name: str, max_level: int) -> Theory:
    from Stdlib.registry import stdlib_theory

    return stdlib_theory(name, max_level).payload


def elaborate_sort(ref: SortRef) -> Sort:
    return Sort.parse(ref.keyword, ref.level)


def elaborate_term(theory: Theory, node: TermNode, scope: Mapping[str, Var]) -> Term:
    match node:
        case NameRef(name=name):
            if name in scope:
                return scope[name]
            symbol = theory.funs.get(name)
            if symbol is None:
                raise UnknownVariable(f"'{name}' is neither a variable in scope nor a symbol of '{theory.name}'")
            if symbol.arity:
                raise ArityMismatch(f"'{name}' expects {symbol.arity} arguments, got 0")
            return App(symbol, ())
        case AppNode(name=name, args=args):
            return App(theory.fun(name), tuple(elaborate_term(theory, a, scope) for a in args))
    raise TypeError(f"Not a term node: {node!r}")


def elaborate_formula(theory: Theory, formula: FormulaNode, scope: Mapping[str, Var]) -> Formula:
    atoms = []
    for atom in formula:
        match atom:
            case EqNode(lhs=lhs, rhs=rhs):
                atoms.append(Eq(elaborate_term(theory, lhs, scope), elaborate_term(theory, rhs, scope)))
            case DefNode(term=term):
                atoms.append(Defined(elaborate_term(theory, term, scope)))
            case BareNode(term=term):
                name = term.name
                args = term.args if isinstance(term, AppNode) else ()
                if name not in theory.preds:
                    raise UnknownSymbol(f"'{name}' is not a predicate of '{theory.name}'")
                atoms.append(Pred(theory.pred(name), tuple(elaborate_term(theory, a, scope) for a in args)))
    return tuple(atoms)


def merge_theories(theory: Theory, other: Theory) -> Theory:
    """Add another theory's declarations; identical repeats are dropped, clashes raise."""
    preds = [p for p in other.pred_symbols if theory.preds.get(p.name) != p]
    axioms = []
    for ax in other.axioms:
        existing = theory.axiom_map.get(ax.name)
        if existing is None:
            axioms.append(ax)
        elif existing.sequent != ax.sequent:
            raise DuplicateName(f"Axiom '{ax.name}' of '{other.name}' clashes with '{theory.name}'")
    return theory.extend(
        funs=other.fun_symbols, preds=preds, axioms=axioms, base_names=other.base_names
    )


def _variables(decls: Tuple[Tuple[str, SortRef], ...], owner: str) -> Tuple[Var, ...]:
    seen = set()
    out = []
    for name, ref in decls:
        if name in seen:
            raise DuplicateName(f"Variable '{name}' declared twice in '{owner}'")
        seen.add(name)
        out.append(Var(name, elaborate_sort(ref)))
    return tuple(out)


def _telescope(theory: Theory, decl: TelescopeDecl) -> Telescope:
    positions = {e.var: i for i, e in enumerate(decl.entries, start=1)}
    if len(positions) != len(decl.entries):
        raise DuplicateName(f"Telescope '{decl.name}' binds a variable twice")
    scope: Dict[str, Var] = {}
    specs = []
    for index, entry in enumerate(decl.entries, start=1):
        for name in _names(entry.term):
            if positions.get(name, 0) >= index and name not in scope:
                raise OutOfOrderReference(
                    f"Entry {index} ({entry.var}) of '{decl.name}' mentions '{name}' before it is bound", index
                )
        term = elaborate_term(theory, entry.term, scope)
        kind = EntryKind(entry.kind) if entry.kind else None
        scope[entry.var] = Var(entry.var, variable_sort(kind or default_kind(term.sort), term.sort))
        specs.append((entry.var, term, kind))
    tel = Telescope.build(theory, decl.name, specs)
    check_telescope_syntax(theory, tel)
    return tel


def _names(node: TermNode):
    match node:
        case NameRef(name=name):
            yield name
        case AppNode(args=args):
            for a in args:
                yield from _names(a)


def _theory_block(block: TheoryBlock, resolver: Resolver, default_level: int) -> Tuple[Theory, Dict[str, Telescope]]:
    pragmas = [i.max_level for i in block.items if isinstance(i, PragmaDecl)]
    max_level = pragmas[-1] if pragmas else default_level
    theory = base_theory(max_level).renamed(block.name)
    telescopes: Dict[str, Telescope] = {}
    for item in block.items:
        match item:
            case PragmaDecl():
                continue
            case ImportDecl(name=name):
                theory = merge_theories(theory, resolver(name, max_level)).renamed(block.name)
            case FunDecl(name=name, args=args, result=result, context=context):
                symbol = FunSymbol(name, tuple(elaborate_sort(s) for s in args), elaborate_sort(result), context)
                existing = theory.funs.get(name)
                if existing is not None and (name not in theory.base_names or existing != symbol):
                    raise DuplicateName(f"Symbol '{name}' already declared in '{block.name}'")
                theory = theory.extend(funs=[symbol])
            case PredDecl(name=name, args=args):
                if name in theory.preds or name in theory.funs:
                    raise DuplicateName(f"Symbol '{name}' already declared in '{block.name}'")
                theory = theory.extend(preds=[PredSymbol(name, tuple(elaborate_sort(s) for s in args))])
            case AxiomDecl(name=name, variables=variables, lhs=lhs, rhs=rhs):
                var_ctx = _variables(variables, name)
                scope = {v.name: v for v in var_ctx}
                sequent = Sequent(var_ctx, elaborate_formula(theory, lhs, scope), elaborate_formula(theory, rhs, scope))
                existing = theory.axiom_map.get(name)
                if existing is not None and name in theory.base_names and existing.sequent == sequent:
                    continue
                theory = theory.extend(axioms=[Axiom(name, sequent)])
            case TelescopeDecl(name=name):
                if name in telescopes:
                    raise DuplicateName(f"Telescope '{name}' declared twice in '{block.name}'")
                telescopes[name] = _telescope(theory, item)
    return theory, telescopes


def _morphism_block(block: MorphismBlock, ws: Workspace) -> TheoryMorphism:
    source, target = ws.theory(block.source), ws.theory(block.target)
    fun_map, pred_map = {}, {}
    for item in block.items:
        table = fun_map if isinstance(item, FunMap) else pred_map
        if item.name in table:
            raise DuplicateName(f"'{item.name}' mapped twice in '{block.name}'")
        symbol = source.fun(item.name) if isinstance(item, FunMap) else source.pred(item.name)
        if len(item.params) != symbol.arity:
            raise ArityMismatch(f"'{item.name}' takes {symbol.arity} parameters in '{block.name}'")
        params = tuple(Var(p, s) for p, s in zip(item.params, symbol.arg_sorts))
        if len({p.name for p in params}) != len(params):
            raise DuplicateName(f"Repeated parameter in the image of '{item.name}'")
        scope = {p.name: p for p in params}
        if isinstance(item, FunMap):
            fun_map[item.name] = (params, elaborate_term(target, item.image, scope))
        else:
            pred_map[item.name] = (params, elaborate_formula(target, item.image, scope))
    return TheoryMorphism(block.name, source, target, fun_map, pred_map)


def elaborate(tf: TheoryFile, resolver: Optional[Resolver] = None, max_level: Optional[int] = None) -> Workspace:
    """Build theories, telescopes and morphisms in declaration order."""
    resolver = resolver or _stdlib_resolver
    max_level = Helper.get_settings().max_level if max_level is None else max_level
    ws = Workspace()
    for decl in tf.declarations:
        match decl:
            case ImportDecl(name=name):
                ws.theories[name] = resolver(name, max_level)
            case TheoryBlock(name=name):
                if name in ws.declared:
                    raise DuplicateName(f"Theory '{name}' declared twice")
                theory, telescopes = _theory_block(decl, resolver, max_level)
                ws.theories[name] = theory
                ws.telescopes[name] = telescopes
                ws.declared.append(name)
            case MorphismBlock(name=name):
                if name in ws.morphisms:
                    raise DuplicateName(f"Morphism '{name}' declared twice")
                ws.morphisms[name] = _morphism_block(decl, ws)
    logger.info(
        "📜 Elaborated %d theories, %d morphisms", len(ws.declared), len(ws.morphisms)
    )
    return ws
