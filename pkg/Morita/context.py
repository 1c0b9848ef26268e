from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional

from Core.Enums.kernel import SortKind
from Core.Utils.exception import MissingContextMetadata
from Core.Utils.logger import Logger
from Kernel.sort import Sort
from Kernel.symbol import is_ft, is_structural
from Kernel.term import App, Term, symbols, term_key
from Kernel.theory import Theory

logger = Logger.get_logger()


@dataclass(frozen=True)
class ContextAnalysis:
    ft_free: bool
    contexts: FrozenSet[Term]

    @property
    def is_context_normal(self) -> bool:
        return self.ft_free and len(self.contexts) <= 1

    def to_dict(self) -> Dict:
        return {
            "ft_free": self.ft_free,
            "contexts": [str(c) for c in sorted(self.contexts, key=term_key)],
            "is_context_normal": self.is_context_normal,
        }


def context_level(t: Term) -> Optional[int]:
    """n for t of sort (tm, n) or (ty, n); None for a bare ctx 0."""
    if t.sort.kind is SortKind.TM:
        return t.sort.level
    return t.sort.level - 1 if t.sort.level > 0 else None


def context_analysis(t: Term, theory: Theory) -> ContextAnalysis:
    """Whether t avoids ft, and its contexts.

    The contexts of t are its subterms of sort (ctx, n), n the level of t,
    that are not proper subterms of another such subterm. An application
    with such an argument must belong to a symbol with a declared context
    position; the structural ty_n/ft_n are the exception.
    """
    level = context_level(t)
    target = Sort.ctx(level) if level is not None else None
    found: List[Term] = []
    stack = [t]
    while stack:
        u = stack.pop()
        if not isinstance(u, App):
            continue
        symbol = theory.funs.get(u.symbol.name, u.symbol)
        for i, arg in enumerate(u.args):
            if arg.sort != target:
                stack.append(arg)
                continue
            if symbol.context_position is None and not is_structural(symbol.name):
                raise MissingContextMetadata(
                    f"Argument {i + 1} of '{symbol.name}' has sort {target} but the symbol declares no context position"
                )
            found.append(arg)
    analysis = ContextAnalysis(
        ft_free=not any(is_ft(name) for name in symbols(t)),
        contexts=frozenset(found),
    )
    logger.debug("🗂️ Contexts of %s: %s", t, analysis.to_dict())
    return analysis
