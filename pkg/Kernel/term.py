from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Set, Tuple, Union

from Core.Utils.exception import ArityMismatch, SortMismatch, UnknownVariable
from Kernel.sort import Sort
from Kernel.symbol import FunSymbol

Position = Tuple[int, ...]


@dataclass(frozen=True, slots=True, eq=False)
class Var:
    name: str
    sort: Sort
    depth: int = field(default=0, init=False, repr=False)
    text: str = field(default="", init=False, repr=False)
    _hash: int = field(default=0, init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "text", self.name)
        object.__setattr__(self, "_hash", hash(("var", self.name, self.sort)))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Var)
            and self.name == other.name
            and self.sort == other.sort
        )

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True, eq=False)
class App:
    """σ(t₁, …, t_k); arity and argument sorts are checked on construction."""

    symbol: FunSymbol
    args: Tuple["Term", ...] = ()
    depth: int = field(default=0, init=False, repr=False)
    text: str = field(default="", init=False, repr=False)
    _hash: int = field(default=0, init=False, repr=False)

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
        if args:
            object.__setattr__(self, "depth", 1 + max(a.depth for a in args))
            object.__setattr__(
                self, "text", f"{self.symbol.name}({', '.join(a.text for a in args)})"
            )
        else:
            object.__setattr__(self, "text", self.symbol.name)
        object.__setattr__(self, "_hash", hash(("app", self.symbol.name, args)))

    @property
    def sort(self) -> Sort:
        return self.symbol.result_sort

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return (
            isinstance(other, App)
            and self._hash == other._hash
            and self.symbol == other.symbol
            and self.args == other.args
        )

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return self.text


Term = Union[Var, App]


def term_key(t: Term) -> Tuple[int, str]:
    """Total order on terms: depth first, then printed form."""
    return (t.depth, t.text)


def constant(symbol: FunSymbol) -> App:
    return App(symbol, ())


def sort_of(t: Term, vctx: Mapping[str, Sort], _position: Position = ()) -> Sort:
    """Sort of `t` after checking every variable against `vctx`."""
    match t:
        case Var(name=name, sort=sort):
            if name not in vctx:
                raise UnknownVariable(f"Variable '{name}' is not in the context")
            if vctx[name] != sort:
                raise SortMismatch(
                    f"Variable '{name}' used at sort {sort} but declared {vctx[name]}",
                    _position,
                )
            return sort
        case App(symbol=symbol, args=args):
            for index, arg in enumerate(args, start=1):
                sort_of(arg, vctx, _position + (index,))
            return symbol.result_sort
    raise SortMismatch(f"Not a term: {t!r}", _position)


def variables(t: Term) -> Set[Var]:
    out: Set[Var] = set()
    stack: List[Term] = [t]
    while stack:
        match stack.pop():
            case Var() as v:
                out.add(v)
            case App(args=args):
                stack.extend(args)
    return out


def occurrences(t: Term) -> Dict[Var, int]:
    counts: Dict[Var, int] = {}
    for _, sub in positions(t):
        if isinstance(sub, Var):
            counts[sub] = counts.get(sub, 0) + 1
    return counts


def symbols(t: Term) -> Set[str]:
    return {sub.symbol.name for _, sub in positions(t) if isinstance(sub, App)}


def positions(t: Term, _prefix: Position = ()) -> Iterator[Tuple[Position, Term]]:
    """Post-order: arguments left to right before the term itself."""
    if isinstance(t, App):
        for index, arg in enumerate(t.args, start=1):
            yield from positions(arg, _prefix + (index,))
    yield _prefix, t


def subterm(t: Term, position: Position) -> Term:
    for index in position:
        if not isinstance(t, App) or not 1 <= index <= len(t.args):
            raise SortMismatch(f"No subterm at position {list(position)}", position)
        t = t.args[index - 1]
    return t


def replace_at(t: Term, position: Position, new: Term) -> Term:
    if not position:
        if new.sort != t.sort:
            raise SortMismatch(f"Cannot replace {t} by {new}: sorts differ", position)
        return new
    if not isinstance(t, App):
        raise SortMismatch(f"No subterm at position {list(position)}", position)
    index = position[0]
    args = list(t.args)
    args[index - 1] = replace_at(args[index - 1], position[1:], new)
    return App(t.symbol, tuple(args))


def replace_all(t: Term, old: Term, new: Term) -> Term:
    if t == old:
        return new
    if isinstance(t, App):
        args = tuple(replace_all(a, old, new) for a in t.args)
        if args != t.args:
            return App(t.symbol, args)
    return t
