from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from Core.Enums.kernel import SortKind
from Core.Utils.exception import (
    DuplicateName,
    MissingBaseSymbol,
    NoBoundary,
    UnknownSymbol,
)
from Kernel.formula import Pred, Sequent, atom_terms
from Kernel.sort import Sort
from Kernel.symbol import FunSymbol, PredSymbol, ft_name, ty_name
from Kernel.term import App, Term, positions


@dataclass(frozen=True, slots=True)
class Axiom:
    name: str
    sequent: Sequent

    def __str__(self) -> str:
        return f"{self.name}: {self.sequent}"


@dataclass(frozen=True, eq=False)
class Theory:
    name: str
    fun_symbols: Tuple[FunSymbol, ...] = ()
    pred_symbols: Tuple[PredSymbol, ...] = ()
    axioms: Tuple[Axiom, ...] = ()
    base_names: FrozenSet[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "fun_symbols", tuple(self.fun_symbols))
        object.__setattr__(self, "pred_symbols", tuple(self.pred_symbols))
        object.__setattr__(self, "axioms", tuple(self.axioms))
        object.__setattr__(self, "base_names", frozenset(self.base_names))

    @cached_property
    def _key(self) -> tuple:
        return (self.name, self.fun_symbols, self.pred_symbols, self.axioms)

    @cached_property
    def _hash(self) -> int:
        return hash(self._key)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return isinstance(other, Theory) and self._hash == other._hash and self._key == other._key

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def funs(self) -> Dict[str, FunSymbol]:
        return {f.name: f for f in self.fun_symbols}

    @cached_property
    def preds(self) -> Dict[str, PredSymbol]:
        return {p.name: p for p in self.pred_symbols}

    @cached_property
    def axiom_map(self) -> Dict[str, Axiom]:
        return {a.name: a for a in self.axioms}

    def fun(self, name: str) -> FunSymbol:
        if name not in self.funs:
            raise UnknownSymbol(f"Theory '{self.name}' has no function symbol '{name}'")
        return self.funs[name]

    def pred(self, name: str) -> PredSymbol:
        if name not in self.preds:
            raise UnknownSymbol(f"Theory '{self.name}' has no predicate symbol '{name}'")
        return self.preds[name]

    def axiom(self, name: str) -> Axiom:
        if name not in self.axiom_map:
            raise UnknownSymbol(f"Theory '{self.name}' has no axiom '{name}'")
        return self.axiom_map[name]

    def app(self, name: str, *args: Term) -> App:
        return App(self.fun(name), tuple(args))

    @property
    def constants(self) -> List[FunSymbol]:
        return [f for f in self.fun_symbols if f.arity == 0]

    @property
    def own_funs(self) -> List[FunSymbol]:
        return [f for f in self.fun_symbols if f.name not in self.base_names]

    @property
    def own_preds(self) -> List[PredSymbol]:
        return [p for p in self.pred_symbols if p.name not in self.base_names]

    @property
    def own_axioms(self) -> List[Axiom]:
        return [a for a in self.axioms if a.name not in self.base_names]

    def extend(
        self,
        name: Optional[str] = None,
        funs: Iterable[FunSymbol] = (),
        preds: Iterable[PredSymbol] = (),
        axioms: Iterable[Axiom] = (),
        base_names: Iterable[str] = (),
    ) -> "Theory":
        """A new theory with extra declarations; reused names are rejected."""
        funs, preds, axioms = tuple(funs), tuple(preds), tuple(axioms)
        taken = set(self.funs) | set(self.preds)
        for decl in funs + preds:
            if decl.name in taken:
                existing = self.funs.get(decl.name)
                if existing == decl:
                    continue
                raise DuplicateName(f"Symbol '{decl.name}' already declared in '{self.name}'")
            taken.add(decl.name)
        names = set(self.axiom_map)
        for ax in axioms:
            if ax.name in names:
                raise DuplicateName(f"Axiom '{ax.name}' already declared in '{self.name}'")
            names.add(ax.name)
        return Theory(
            name or self.name,
            self.fun_symbols + tuple(f for f in funs if f.name not in self.funs),
            self.pred_symbols + preds,
            self.axioms + axioms,
            self.base_names | frozenset(base_names),
        )

    def with_axioms(self, axioms: Iterable[Axiom], name: Optional[str] = None) -> "Theory":
        return Theory(
            name or self.name, self.fun_symbols, self.pred_symbols, tuple(axioms), self.base_names
        )

    def renamed(self, name: str) -> "Theory":
        return self.with_axioms(self.axioms, name)

    def __str__(self) -> str:
        return f"theory {self.name} ({len(self.fun_symbols)} funs, {len(self.axioms)} axioms)"


def boundary(t: Term, theory: Theory) -> App:
    """e_p(t): ty_n(t) for t : (tm, n), ft_n(t) for t : (ty, n)."""
    sort = t.sort
    if sort.kind is SortKind.TM:
        name = ty_name(sort.level)
    elif sort.level == 0:
        raise NoBoundary(f"{t} has sort ctx 0 and no boundary")
    else:
        name = ft_name(sort.level - 1)
    if name not in theory.funs:
        raise MissingBaseSymbol(f"Theory '{theory.name}' lacks base symbol '{name}'")
    return App(theory.funs[name], (t,))


@dataclass(frozen=True)
class ReportEntry:
    kind: str
    where: str
    message: str

    def to_dict(self) -> Dict[str, str]:
        return {"kind": self.kind, "where": self.where, "message": self.message}


@dataclass(frozen=True)
class TheoryReport:
    theory: str
    entries: Tuple[ReportEntry, ...] = field(default_factory=tuple)

    @property
    def valid(self) -> bool:
        return not self.entries

    def to_dict(self) -> Dict:
        return {
            "theory": self.theory,
            "valid": self.valid,
            "entries": [e.to_dict() for e in self.entries],
        }


def validate_theory(theory: Theory) -> TheoryReport:
    """Every signature and axiom problem, as report entries."""
    entries: List[ReportEntry] = []
    seen: Dict[str, str] = {}
    for decl in theory.fun_symbols + theory.pred_symbols:
        kind = "fun" if isinstance(decl, FunSymbol) else "pred"
        if decl.name in seen:
            entries.append(
                ReportEntry("DuplicateName", decl.name, f"{kind} '{decl.name}' clashes with a {seen[decl.name]}")
            )
        seen[decl.name] = kind

    axiom_names = set()
    for ax in theory.axioms:
        if ax.name in axiom_names:
            entries.append(ReportEntry("DuplicateName", ax.name, f"axiom '{ax.name}' declared twice"))
        axiom_names.add(ax.name)
        seq = ax.sequent
        declared = {}
        for v in seq.var_ctx:
            if v.name in declared:
                entries.append(ReportEntry("DuplicateName", ax.name, f"variable '{v.name}' declared twice"))
            declared[v.name] = v.sort
        for side, formula in (("lhs", seq.lhs), ("rhs", seq.rhs)):
            for index, atom in enumerate(formula, start=1):
                where = f"{ax.name}.{side}[{index}]"
                for t in atom_terms(atom):
                    for pos, sub in positions(t):
                        if isinstance(sub, App):
                            known = theory.funs.get(sub.symbol.name)
                            if known is None:
                                entries.append(ReportEntry("UnknownSymbol", where, f"'{sub.symbol.name}' is not declared"))
                            elif known != sub.symbol:
                                entries.append(ReportEntry("SortMismatch", where, f"'{sub.symbol.name}' used with signature {sub.symbol.signature()}"))
                        elif sub.name not in declared:
                            entries.append(ReportEntry("OpenSequent", where, f"free variable '{sub.name}' is not in the context"))
                        elif declared[sub.name] != sub.sort:
                            entries.append(ReportEntry("SortMismatch", where, f"variable '{sub.name}' used at sort {sub.sort}"))
                if isinstance(atom, Pred):
                    known = theory.preds.get(atom.symbol.name)
                    if known is None:
                        entries.append(ReportEntry("UnknownSymbol", where, f"predicate '{atom.symbol.name}' is not declared"))
                    elif known != atom.symbol:
                        entries.append(ReportEntry("SortMismatch", where, f"predicate '{atom.symbol.name}' used with another signature"))
    return TheoryReport(theory.name, tuple(entries))


def is_small(theory: Theory, bound: Optional[int]) -> bool:
    """Symbol and axiom counts outside the base are each below `bound`; None stands for ℵ₀."""
    counts = (len(theory.own_funs), len(theory.own_preds), len(theory.own_axioms))
    if bound is None:
        return True
    return all(count < bound for count in counts)
