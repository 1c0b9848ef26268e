from dataclasses import dataclass
from typing import Optional, Tuple, Union


@dataclass(frozen=True)
class SortRef:
    keyword: str
    level: int


@dataclass(frozen=True)
class NameRef:
    """A bare name: a variable in scope, otherwise a constant."""

    name: str


@dataclass(frozen=True)
class AppNode:
    name: str
    args: Tuple["TermNode", ...] = ()


TermNode = Union[NameRef, AppNode]


@dataclass(frozen=True)
class EqNode:
    lhs: TermNode
    rhs: TermNode


@dataclass(frozen=True)
class DefNode:
    term: TermNode


@dataclass(frozen=True)
class BareNode:
    """An application read as a predicate atom."""

    term: TermNode


AtomNode = Union[EqNode, DefNode, BareNode]
FormulaNode = Tuple[AtomNode, ...]


@dataclass(frozen=True)
class ImportDecl:
    name: str


@dataclass(frozen=True)
class PragmaDecl:
    max_level: int


@dataclass(frozen=True)
class FunDecl:
    name: str
    args: Tuple[SortRef, ...]
    result: SortRef
    context: Optional[int] = None


@dataclass(frozen=True)
class PredDecl:
    name: str
    args: Tuple[SortRef, ...]


@dataclass(frozen=True)
class AxiomDecl:
    name: str
    variables: Tuple[Tuple[str, SortRef], ...]
    lhs: FormulaNode
    rhs: FormulaNode


@dataclass(frozen=True)
class EntryDecl:
    var: str
    kind: Optional[str]
    term: TermNode


@dataclass(frozen=True)
class TelescopeDecl:
    name: str
    entries: Tuple[EntryDecl, ...]


TheoryItem = Union[ImportDecl, PragmaDecl, FunDecl, PredDecl, AxiomDecl, TelescopeDecl]


@dataclass(frozen=True)
class TheoryBlock:
    name: str
    items: Tuple[TheoryItem, ...]


@dataclass(frozen=True)
class FunMap:
    name: str
    params: Tuple[str, ...]
    image: TermNode


@dataclass(frozen=True)
class PredMap:
    name: str
    params: Tuple[str, ...]
    image: FormulaNode


@dataclass(frozen=True)
class MorphismBlock:
    name: str
    source: str
    target: str
    items: Tuple[Union[FunMap, PredMap], ...]


Declaration = Union[ImportDecl, TheoryBlock, MorphismBlock]


@dataclass(frozen=True)
class TheoryFile:
    declarations: Tuple[Declaration, ...]

    @property
    def theories(self) -> Tuple[TheoryBlock, ...]:
        return tuple(d for d in self.declarations if isinstance(d, TheoryBlock))

    @property
    def morphisms(self) -> Tuple[MorphismBlock, ...]:
        return tuple(d for d in self.declarations if isinstance(d, MorphismBlock))
