from dataclasses import dataclass

from Core.Enums.kernel import SortKind
from Core.Utils.exception import UnknownSort


@dataclass(frozen=True, slots=True, order=True)
class Sort:
    """A sort (ctx, n) or (tm, n); (ty, n) is an alias for (ctx, n + 1)."""

    kind: SortKind
    level: int

    def __post_init__(self):
        if self.level < 0:
            raise UnknownSort(f"Sort level must be non-negative, got {self.level}")

    @staticmethod
    def ctx(level: int) -> "Sort":
        return Sort(SortKind.CTX, level)

    @staticmethod
    def tm(level: int) -> "Sort":
        return Sort(SortKind.TM, level)

    @staticmethod
    def ty(level: int) -> "Sort":
        return Sort(SortKind.CTX, level + 1)

    @staticmethod
    def parse(keyword: str, level: int) -> "Sort":
        match keyword:
            case "tm":
                return Sort.tm(level)
            case "ty":
                return Sort.ty(level)
            case "ctx":
                return Sort.ctx(level)
            case _:
                raise UnknownSort(f"Unknown sort keyword '{keyword}'")

    @property
    def is_type(self) -> bool:
        return self.kind is SortKind.CTX and self.level > 0

    @property
    def is_term(self) -> bool:
        return self.kind is SortKind.TM

    @property
    def type_level(self) -> int:
        """n such that this sort is (ty, n)."""
        return self.level - 1

    def __str__(self) -> str:
        if self.kind is SortKind.TM:
            return f"tm {self.level}"
        if self.level == 0:
            return "ctx 0"
        return f"ty {self.level - 1}"
