import itertools
from typing import Dict, Iterable, List, Optional

from Kernel.sort import Sort
from Kernel.symbol import FunSymbol
from Kernel.term import App, Term, term_key
from Kernel.theory import Theory


def enumerate_terms(
    theory: Theory,
    leaves: Iterable[Term],
    depth: int,
    symbols: Optional[Iterable[FunSymbol]] = None,
    limit: Optional[int] = None,
) -> Dict[Sort, List[Term]]:
    """Well-sorted terms of depth ≤ `depth`, grouped by sort in term order.

    Leaves are the given terms plus the theory's constants. `limit` caps the
    number of terms kept per sort at every depth.
    """
    symbols = list(theory.fun_symbols if symbols is None else symbols)
    by_sort: Dict[Sort, List[Term]] = {}
    seen = set()

    def add(t: Term) -> bool:
        if t in seen:
            return False
        bucket = by_sort.setdefault(t.sort, [])
        if limit is not None and len(bucket) >= limit:
            return False
        seen.add(t)
        bucket.append(t)
        return True

    for t in sorted(set(leaves), key=term_key):
        add(t)
    for symbol in sorted((s for s in symbols if s.arity == 0), key=lambda s: s.name):
        add(App(symbol, ()))

    frontier = set(seen)
    for _ in range(depth):
        fresh: List[Term] = []
        for symbol in sorted((s for s in symbols if s.arity > 0), key=lambda s: s.name):
            pools = [by_sort.get(sort, []) for sort in symbol.arg_sorts]
            if not all(pools):
                continue
            for args in itertools.product(*pools):
                if not any(a in frontier for a in args):
                    continue
                fresh.append(App(symbol, args))
        frontier = {t for t in sorted(fresh, key=term_key) if add(t)}
        if not frontier:
            break

    for bucket in by_sort.values():
        bucket.sort(key=term_key)
    return by_sort
