from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import networkx as nx

from Core.Enums.kernel import ObligationStatus
from Core.Utils.exception import BaseMismatch, KernelError
from Core.Utils.logger import Logger
from Kernel.formula import Defined, Eq, Pred, Sequent
from Kernel.morphism import (
    Obligation,
    TheoryMorphism,
    apply_morphism,
    compose_morphisms,
    inclusion_morphism,
    parameters,
)
from Kernel.symbol import FunSymbol, PredSymbol
from Kernel.term import App
from Kernel.theory import Axiom, Theory

logger = Logger.get_logger()


@dataclass(frozen=True)
class ColimitResult:
    theory: Theory
    injections: Tuple[TheoryMorphism, ...]
    renamings: Dict[str, Dict[str, str]]


def _assumed(theory: Theory) -> Dict[str, Obligation]:
    return {ax.name: Obligation(ObligationStatus.ASSUMED, note="colimit injection") for ax in theory.axioms}


def _check_base(theory: Theory, base: Theory) -> None:
    for symbol in base.fun_symbols:
        if theory.funs.get(symbol.name) != symbol:
            raise BaseMismatch(f"Theory '{theory.name}' does not contain base symbol '{symbol.name}'")
    for symbol in base.pred_symbols:
        if theory.preds.get(symbol.name) != symbol:
            raise BaseMismatch(f"Theory '{theory.name}' does not contain base predicate '{symbol.name}'")


def _check_fixes_base(f: TheoryMorphism, base: Theory) -> None:
    moved = [name for name in f.fun_map if name in base.funs] + [
        name for name in f.pred_map if name in base.preds
    ]
    if moved:
        raise BaseMismatch(f"Morphism '{f.name}' moves base symbols {sorted(moved)}")


def _rename_theory(theory: Theory, base: Theory, suffix: str, clashes: set) -> Dict[str, str]:
    """Suffix colliding non-base names."""
    renaming: Dict[str, str] = {}
    for decl in theory.fun_symbols + theory.pred_symbols:
        if decl.name not in base.funs and decl.name not in base.preds:
            renaming[decl.name] = f"{decl.name}{suffix}" if decl.name in clashes else decl.name
    return renaming


def coproduct(theories: Sequence[Theory], base: Theory, name: str = "coproduct") -> ColimitResult:
    """Disjoint union over `base`; colliding names get the suffix `_<index>` (1-based)."""
    for theory in theories:
        _check_base(theory, base)

    counts: Dict[str, int] = {}
    axiom_counts: Dict[str, int] = {}
    for theory in theories:
        for decl in theory.fun_symbols + theory.pred_symbols:
            if decl.name not in base.funs and decl.name not in base.preds:
                counts[decl.name] = counts.get(decl.name, 0) + 1
        for ax in theory.axioms:
            if ax.name not in base.axiom_map:
                axiom_counts[ax.name] = axiom_counts.get(ax.name, 0) + 1
    clashes = {n for n, c in counts.items() if c > 1}
    axiom_clashes = {n for n, c in axiom_counts.items() if c > 1}

    result = Theory(name, base.fun_symbols, base.pred_symbols, base.axioms, base.base_names | set(base.funs) | set(base.preds) | set(base.axiom_map))
    renamings: Dict[str, Dict[str, str]] = {}
    partial = []
    for index, theory in enumerate(theories, start=1):
        suffix = f"_{index}"
        renaming = _rename_theory(theory, base, suffix, clashes)
        funs = [
            FunSymbol(renaming[f.name], f.arg_sorts, f.result_sort, f.context_position)
            for f in theory.fun_symbols if f.name in renaming
        ]
        preds = [PredSymbol(renaming[p.name], p.arg_sorts) for p in theory.pred_symbols if p.name in renaming]
        result = result.extend(funs=funs, preds=preds)
        renamings[theory.name] = {k: v for k, v in renaming.items() if k != v}
        partial.append((theory, renaming, suffix))

    injections = []
    for theory, renaming, suffix in partial:
        fun_map = {}
        for symbol in theory.fun_symbols:
            if symbol.name in renaming:
                params = parameters(symbol)
                fun_map[symbol.name] = (params, App(result.fun(renaming[symbol.name]), params))
        pred_map = {}
        for symbol in theory.pred_symbols:
            if symbol.name in renaming:
                params = parameters(symbol)
                pred_map[symbol.name] = (params, (Pred(result.pred(renaming[symbol.name]), params),))
        injection = TheoryMorphism(f"in_{theory.name}", theory, result, fun_map, pred_map)
        axioms = []
        for ax in theory.axioms:
            if ax.name in base.axiom_map:
                continue
            axiom_name = f"{ax.name}{suffix}" if ax.name in axiom_clashes else ax.name
            axioms.append(Axiom(axiom_name, apply_morphism(injection, ax.sequent)))
        result = result.extend(axioms=axioms)
        injections.append(injection)

    injections = tuple(
        TheoryMorphism(i.name, i.source, result, i.fun_map, i.pred_map, _assumed(i.source))
        for i in injections
    )
    logger.info("✅ Coproduct '%s' of %d theories: %d symbols, %d axioms", name, len(theories), len(result.fun_symbols), len(result.axioms))
    return ColimitResult(result, injections, renamings)


def gluing_axioms(f: TheoryMorphism, g: TheoryMorphism, base: Theory, prefix: str = "coeq") -> List[Axiom]:
    """f(σ(x̄)) ≅ g(σ(x̄)) for every non-base σ, and f(R(x̄)) ⊣⊢ g(R(x̄))."""
    axioms: List[Axiom] = []
    for symbol in f.source.fun_symbols:
        if symbol.name in base.funs:
            continue
        params = parameters(symbol)
        lhs = apply_morphism(f, App(symbol, params))
        rhs = apply_morphism(g, App(symbol, params))
        eq = (Eq(lhs, rhs),)
        axioms.append(Axiom(f"{prefix}_{symbol.name}", Sequent(params, (Defined(lhs),), eq)))
        axioms.append(Axiom(f"{prefix}_{symbol.name}_r", Sequent(params, (Defined(rhs),), eq)))
    for symbol in f.source.pred_symbols:
        if symbol.name in base.preds:
            continue
        params = parameters(symbol)
        lhs = apply_morphism(f, Pred(symbol, params))
        rhs = apply_morphism(g, Pred(symbol, params))
        axioms.append(Axiom(f"{prefix}_{symbol.name}", Sequent(params, lhs, rhs)))
        axioms.append(Axiom(f"{prefix}_{symbol.name}_r", Sequent(params, rhs, lhs)))
    return axioms


def coequalizer(f: TheoryMorphism, g: TheoryMorphism, base: Theory, name: str = "coequalizer") -> ColimitResult:
    if f.source is not g.source and f.source != g.source:
        raise BaseMismatch("Coequalizer needs parallel morphisms")
    if f.target is not g.target and f.target != g.target:
        raise BaseMismatch("Coequalizer needs parallel morphisms")
    for m in (f, g):
        _check_fixes_base(m, base)
    _check_base(f.source, base)
    result = f.target.extend(name=name, axioms=gluing_axioms(f, g, base))
    injection = inclusion_morphism(f.target, result, name=f"in_{f.target.name}")
    injection = injection.with_obligations(_assumed(f.target))
    logger.info("✅ Coequalizer '%s': %d gluing axioms", name, len(result.axioms) - len(f.target.axioms))
    return ColimitResult(result, (injection,), {})


@dataclass
class Diagram:
    """Finite directed multigraph of theories under a shared base."""

    base: Theory
    graph: nx.MultiDiGraph

    @classmethod
    def build(cls, base: Theory, theories: Sequence[Theory], edges: Sequence[Tuple[str, str, TheoryMorphism]]) -> "Diagram":
        graph = nx.MultiDiGraph()
        for theory in theories:
            graph.add_node(theory.name, theory=theory)
        for source, target, morphism in edges:
            if source not in graph or target not in graph:
                raise KernelError(f"Edge '{morphism.name}' joins unknown theories {source} -> {target}")
            if morphism.source != graph.nodes[source]["theory"] or morphism.target != graph.nodes[target]["theory"]:
                raise BaseMismatch(f"Edge '{morphism.name}' does not match its endpoints")
            graph.add_edge(source, target, key=morphism.name, morphism=morphism)
        return cls(base, graph)

    @property
    def theories(self) -> List[Theory]:
        return [self.graph.nodes[n]["theory"] for n in self.graph.nodes]


def theory_colimit(diagram: Diagram, name: str = "colimit") -> ColimitResult:
    """Coproduct of the nodes, glued along every edge."""
    theories = diagram.theories
    for _, _, data in diagram.graph.edges(data=True):
        _check_fixes_base(data["morphism"], diagram.base)
    summed = coproduct(theories, diagram.base, name=name)
    injection = {inj.source.name: inj for inj in summed.injections}

    glue: List[Axiom] = []
    for source, target, key, data in sorted(diagram.graph.edges(keys=True, data=True), key=lambda e: (e[0], e[1], e[2])):
        morphism: TheoryMorphism = data["morphism"]
        along = compose_morphisms(injection[target], morphism)
        direct = injection[source]
        glue.extend(gluing_axioms(along, direct, diagram.base, prefix=f"glue_{key}"))
    result = summed.theory.extend(axioms=glue)
    injections = tuple(
        TheoryMorphism(i.name, i.source, result, i.fun_map, i.pred_map, _assumed(i.source))
        for i in summed.injections
    )
    logger.info("✅ Colimit '%s': %d nodes, %d edges, %d gluing axioms", name, diagram.graph.number_of_nodes(), diagram.graph.number_of_edges(), len(glue))
    return ColimitResult(result, injections, summed.renamings)

