from typing import Iterable, List

from Core.Enums.kernel import SortKind
from Kernel.formula import Defined, Eq, Formula, Pred
from Kernel.morphism import TheoryMorphism
from Kernel.sort import Sort
from Kernel.term import Term, Var
from Kernel.theory import Theory
from Morita.telescope import Telescope
from Syntax.ast import (
    EntryDecl,
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
    PredMap,
    SortRef,
    TelescopeDecl,
    TermNode,
    TheoryBlock,
    TheoryFile,
)

INDENT = "  "


def print_sort(sort: SortRef) -> str:
    return f"{sort.keyword} {sort.level}"


def print_term(t: TermNode) -> str:
    match t:
        case NameRef(name=name):
            return name
        case AppNode(name=name, args=args):
            return f"{name}({', '.join(print_term(a) for a in args)})"
    raise TypeError(f"Not a term node: {t!r}")


def print_formula(formula: FormulaNode) -> str:
    if not formula:
        return "true"
    parts = []
    for atom in formula:
        match atom:
            case EqNode(lhs=lhs, rhs=rhs):
                parts.append(f"{print_term(lhs)} = {print_term(rhs)}")
            case DefNode(term=term):
                parts.append(f"{print_term(term)} def")
            case BareNode(term=term):
                parts.append(print_term(term))
    return " /\\ ".join(parts)


def _theory_item(item) -> str:
    match item:
        case ImportDecl(name=name):
            return f"import stdlib.{name} ;"
        case PragmaDecl(max_level=level):
            return f"pragma max_level {level} ;"
        case FunDecl(name=name, args=args, result=result, context=context):
            sig = " * ".join(print_sort(s) for s in args)
            head = f"fun {name} : {sig} -> {print_sort(result)}" if sig else f"fun {name} : -> {print_sort(result)}"
            return head + (f" context {context}" if context is not None else "") + " ;"
        case PredDecl(name=name, args=args):
            return f"pred {name} : {' * '.join(print_sort(s) for s in args)} ;"
        case AxiomDecl(name=name, variables=variables, lhs=lhs, rhs=rhs):
            ctx = ", ".join(f"{v} : {print_sort(s)}" for v, s in variables)
            return f"axiom {name} [{ctx}] : {print_formula(lhs)} |- {print_formula(rhs)} ;"
        case TelescopeDecl(name=name, entries=entries):
            body = "; ".join(
                f"{e.var}{' : ' + e.kind if e.kind else ''} := {print_term(e.term)}" for e in entries
            )
            return f"telescope {name} = [{body}] ;"
    raise TypeError(f"Not a theory item: {item!r}")


def _morphism_item(item) -> str:
    match item:
        case FunMap(name=name, params=params, image=image):
            return f"fun {name}({', '.join(params)}) |-> {print_term(image)} ;"
        case PredMap(name=name, params=params, image=image):
            return f"pred {name}({', '.join(params)}) |-> {print_formula(image)} ;"
    raise TypeError(f"Not a morphism item: {item!r}")


def print_theory_file(tf: TheoryFile) -> str:
    """Canonical text: one item per line, two-space indent, blank line between blocks."""
    blocks: List[str] = []
    for decl in tf.declarations:
        match decl:
            case ImportDecl():
                blocks.append(_theory_item(decl))
            case TheoryBlock(name=name, items=items):
                lines = [f"theory {name} {{"] + [INDENT + _theory_item(i) for i in items] + ["}"]
                blocks.append("\n".join(lines))
            case MorphismBlock(name=name, source=source, target=target, items=items):
                lines = [f"morphism {name} : {source} -> {target} {{"]
                lines += [INDENT + _morphism_item(i) for i in items] + ["}"]
                blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def _sort_ref(sort: Sort) -> SortRef:
    if sort.kind is SortKind.TM:
        return SortRef("tm", sort.level)
    if sort.level == 0:
        return SortRef("ctx", 0)
    return SortRef("ty", sort.level - 1)


def term_node(t: Term) -> TermNode:
    if isinstance(t, Var) or not t.args:
        return NameRef(t.name if isinstance(t, Var) else t.symbol.name)
    return AppNode(t.symbol.name, tuple(term_node(a) for a in t.args))


def formula_node(formula: Formula) -> FormulaNode:
    out = []
    for atom in formula:
        match atom:
            case Eq(lhs=lhs, rhs=rhs):
                out.append(EqNode(term_node(lhs), term_node(rhs)))
            case Defined(term=term):
                out.append(DefNode(term_node(term)))
            case Pred(symbol=symbol, args=args):
                out.append(BareNode(AppNode(symbol.name, tuple(term_node(a) for a in args))))
    return tuple(out)


def theory_block(theory: Theory, include_base: bool = False, telescopes: Iterable[Telescope] = ()) -> TheoryBlock:
    """A self-contained block declaring the theory's symbols and axioms."""
    keep = (lambda name: True) if include_base else (lambda name: name not in theory.base_names)
    items: List = []
    for f in theory.fun_symbols:
        if keep(f.name):
            items.append(FunDecl(f.name, tuple(_sort_ref(s) for s in f.arg_sorts), _sort_ref(f.result_sort), f.context_position))
    for p in theory.pred_symbols:
        if keep(p.name):
            items.append(PredDecl(p.name, tuple(_sort_ref(s) for s in p.arg_sorts)))
    for ax in theory.axioms:
        if keep(ax.name):
            seq = ax.sequent
            items.append(AxiomDecl(
                ax.name,
                tuple((v.name, _sort_ref(v.sort)) for v in seq.var_ctx),
                formula_node(seq.lhs),
                formula_node(seq.rhs),
            ))
    for tel in telescopes:
        items.append(TelescopeDecl(tel.name, tuple(
            EntryDecl(e.var.name, e.kind.value, term_node(e.assigned)) for e in tel.entries
        )))
    return TheoryBlock(theory.name, tuple(items))


def morphism_block(f: TheoryMorphism) -> MorphismBlock:
    items: List = [
        FunMap(name, tuple(p.name for p in params), term_node(image))
        for name, (params, image) in sorted(f.fun_map.items())
    ]
    items += [
        PredMap(name, tuple(p.name for p in params), formula_node(image))
        for name, (params, image) in sorted(f.pred_map.items())
    ]
    return MorphismBlock(f.name, f.source.name, f.target.name, tuple(items))
