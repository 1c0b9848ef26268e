import re
from dataclasses import dataclass, field
from typing import Optional, Tuple

from Core.Enums.kernel import SortKind
from Core.Utils.exception import SortMismatch
from Kernel.sort import Sort

_BASE_PATTERN = re.compile(r"^(ty|ft)(\d+)$")


@dataclass(frozen=True, slots=True)
class FunSymbol:
    name: str
    arg_sorts: Tuple[Sort, ...]
    result_sort: Sort
    context_position: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "arg_sorts", tuple(self.arg_sorts))
        if self.context_position is not None:
            if not 0 <= self.context_position < len(self.arg_sorts):
                raise SortMismatch(
                    f"Context position {self.context_position} out of range for '{self.name}'"
                )
            if self.arg_sorts[self.context_position].kind is not SortKind.CTX:
                raise SortMismatch(
                    f"Context argument of '{self.name}' must have kind ctx",
                    (self.context_position + 1,),
                )

    @property
    def arity(self) -> int:
        return len(self.arg_sorts)

    def signature(self) -> str:
        args = " * ".join(str(s) for s in self.arg_sorts)
        return f"{args} -> {self.result_sort}" if args else f"-> {self.result_sort}"


@dataclass(frozen=True, slots=True)
class PredSymbol:
    name: str
    arg_sorts: Tuple[Sort, ...]

    def __post_init__(self):
        object.__setattr__(self, "arg_sorts", tuple(self.arg_sorts))

    @property
    def arity(self) -> int:
        return len(self.arg_sorts)


def ty_name(level: int) -> str:
    return f"ty{level}"


def ft_name(level: int) -> str:
    return f"ft{level}"


def is_structural(name: str) -> bool:
    """True for the base boundary symbols ty_n and ft_n."""
    return _BASE_PATTERN.match(name) is not None


def is_ft(name: str) -> bool:
    match = _BASE_PATTERN.match(name)
    return match is not None and match.group(1) == "ft"
