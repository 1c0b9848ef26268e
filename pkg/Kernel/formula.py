from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Set, Tuple, Union

from Core.Utils.exception import ArityMismatch, SortMismatch
from Kernel.symbol import PredSymbol
from Kernel.term import App, Term, Var, variables


@dataclass(frozen=True, slots=True)
class Eq:
    lhs: Term
    rhs: Term

    def __post_init__(self):
        if self.lhs.sort != self.rhs.sort:
            raise SortMismatch(
                f"Equation sides have sorts {self.lhs.sort} and {self.rhs.sort}"
            )

    def __str__(self) -> str:
        return f"{self.lhs} = {self.rhs}"


@dataclass(frozen=True, slots=True)
class Defined:
    term: Term

    def __str__(self) -> str:
        return f"{self.term} def"


@dataclass(frozen=True, slots=True)
class Pred:
    symbol: PredSymbol
    args: Tuple[Term, ...] = ()

    def __post_init__(self):
        args = tuple(self.args)
        object.__setattr__(self, "args", args)
        if len(args) != self.symbol.arity:
            raise ArityMismatch(
                f"'{self.symbol.name}' expects {self.symbol.arity} arguments, got {len(args)}"
            )
        for index, (arg, expected) in enumerate(zip(args, self.symbol.arg_sorts), start=1):
            if arg.sort != expected:
                raise SortMismatch(
                    f"Argument {index} of '{self.symbol.name}' has sort {arg.sort}, expected {expected}",
                    (index,),
                )

    def __str__(self) -> str:
        return f"{self.symbol.name}({', '.join(str(a) for a in self.args)})"


Atom = Union[Eq, Defined, Pred]
Formula = Tuple[Atom, ...]
TOP: Formula = ()


def canonicalize(atom: Atom) -> Atom:
    """t def becomes t = t; every other atom is already canonical."""
    if isinstance(atom, Defined):
        return Eq(atom.term, atom.term)
    return atom


def canonical_formula(formula: Iterable[Atom]) -> Formula:
    return tuple(canonicalize(a) for a in formula)


def is_definedness(atom: Atom) -> bool:
    atom = canonicalize(atom)
    return isinstance(atom, Eq) and atom.lhs == atom.rhs


def atom_terms(atom: Atom) -> Tuple[Term, ...]:
    match atom:
        case Eq(lhs=lhs, rhs=rhs):
            return (lhs, rhs)
        case Defined(term=term):
            return (term,)
        case Pred(args=args):
            return args
    raise TypeError(f"Not an atom: {atom!r}")


def map_atom(atom: Atom, fn: Callable[[Term], Term]) -> Atom:
    match atom:
        case Eq(lhs=lhs, rhs=rhs):
            return Eq(fn(lhs), fn(rhs))
        case Defined(term=term):
            return Defined(fn(term))
        case Pred(symbol=symbol, args=args):
            return Pred(symbol, tuple(fn(a) for a in args))
    raise TypeError(f"Not an atom: {atom!r}")


def atom_depth(atom: Atom) -> int:
    return max((t.depth for t in atom_terms(atom)), default=0)


def format_formula(formula: Formula) -> str:
    if not formula:
        return "true"
    return " /\\ ".join(str(a) for a in formula)


@dataclass(frozen=True, slots=True)
class Sequent:
    """φ ⊢_V ψ; var_ctx is ordered and names are unique."""

    var_ctx: Tuple[Var, ...]
    lhs: Formula
    rhs: Formula

    def __post_init__(self):
        object.__setattr__(self, "var_ctx", tuple(self.var_ctx))
        object.__setattr__(self, "lhs", tuple(self.lhs))
        object.__setattr__(self, "rhs", tuple(self.rhs))

    @property
    def context(self) -> Dict[str, Var]:
        return {v.name: v for v in self.var_ctx}

    def open_variables(self) -> Set[Var]:
        """Free variables of either side that are not declared in var_ctx."""
        return free_variables(self.lhs + self.rhs) - set(self.var_ctx)

    def __str__(self) -> str:
        ctx = ", ".join(f"{v.name} : {v.sort}" for v in self.var_ctx)
        return f"[{ctx}] : {format_formula(self.lhs)} |- {format_formula(self.rhs)}"


def free_variables(x) -> Set[Var]:
    """Free variables of a term, atom, formula or sequent."""
    match x:
        case Var() | App():
            return variables(x)
        case Eq() | Defined() | Pred():
            out: Set[Var] = set()
            for t in atom_terms(x):
                out |= variables(t)
            return out
        case Sequent(lhs=lhs, rhs=rhs):
            return free_variables(lhs + rhs)
        case tuple() | list():
            out = set()
            for item in x:
                out |= free_variables(item)
            return out
    raise TypeError(f"Cannot compute free variables of {x!r}")


