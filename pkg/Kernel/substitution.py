from typing import Dict, Iterator, Mapping, Optional, Tuple

from Core.Utils.exception import SortMismatch
from Kernel.formula import Atom, Defined, Eq, Pred, Sequent, free_variables, map_atom
from Kernel.term import App, Term, Var, term_key


class Substitution:
    """Simultaneous, sort-compatible map from variables to terms."""

    __slots__ = ("_map", "_hash")

    def __init__(self, mapping: Optional[Mapping[Var, Term]] = None):
        mapping = dict(mapping or {})
        for var, term in mapping.items():
            if var.sort != term.sort:
                raise SortMismatch(
                    f"Cannot substitute {term} ({term.sort}) for {var.name} ({var.sort})"
                )
        self._map: Dict[Var, Term] = mapping
        self._hash: Optional[int] = None

    def __getitem__(self, var: Var) -> Term:
        return self._map[var]

    def __contains__(self, var: Var) -> bool:
        return var in self._map

    def __iter__(self) -> Iterator[Var]:
        return iter(self._map)

    def __len__(self) -> int:
        return len(self._map)

    def get(self, var: Var, default: Optional[Term] = None) -> Optional[Term]:
        return self._map.get(var, default)

    def items(self):
        return self._map.items()

    def extend(self, var: Var, term: Term) -> "Substitution":
        mapping = dict(self._map)
        mapping[var] = term
        return Substitution(mapping)

    def restrict(self, keep) -> "Substitution":
        keep = set(keep)
        return Substitution({v: t for v, t in self._map.items() if v in keep})

    def then(self, other: "Substitution") -> "Substitution":
        """x[self.then(other)] = x[self][other]."""
        mapping = {var: other.apply_term(term) for var, term in self._map.items()}
        for var, term in other.items():
            mapping.setdefault(var, term)
        return Substitution(mapping)

    def apply_term(self, t: Term) -> Term:
        if not self._map:
            return t
        match t:
            case Var():
                return self._map.get(t, t)
            case App(symbol=symbol, args=args):
                new_args = tuple(self.apply_term(a) for a in args)
                if all(n is o for n, o in zip(new_args, args)):
                    return t
                return App(symbol, new_args)
        raise TypeError(f"Not a term: {t!r}")

    def apply(self, x):
        """Apply to a term, atom, formula or sequent."""
        match x:
            case Var() | App():
                return self.apply_term(x)
            case Eq() | Defined() | Pred():
                return map_atom(x, self.apply_term)
            case tuple():
                return tuple(self.apply(item) for item in x)
            case Sequent(var_ctx=var_ctx, lhs=lhs, rhs=rhs):
                lhs, rhs = self.apply(lhs), self.apply(rhs)
                kept = tuple(v for v in var_ctx if v not in self._map)
                extra = sorted(
                    free_variables(lhs + rhs) - set(kept), key=term_key
                )
                return Sequent(kept + tuple(extra), lhs, rhs)
        raise TypeError(f"Cannot substitute into {x!r}")

    def __eq__(self, other) -> bool:
        return isinstance(other, Substitution) and self._map == other._map

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._map.items()))
        return self._hash

    def sorted_items(self) -> Tuple[Tuple[Var, Term], ...]:
        return tuple(sorted(self._map.items(), key=lambda kv: (kv[0].name, term_key(kv[1]))))

    def __str__(self) -> str:
        return "{" + ", ".join(f"{v.name} := {t}" for v, t in self.sorted_items()) + "}"

    def __repr__(self) -> str:
        return f"Substitution({self})"


EMPTY = Substitution()


def substitute(x, rho: Substitution):
    return rho.apply(x)


def compose_substitutions(first: Substitution, second: Substitution) -> Substitution:
    """x[first][second] = x[compose_substitutions(first, second)]."""
    return first.then(second)


def match_term(
    pattern: Term, target: Term, rho: Optional[Dict[Var, Term]] = None
) -> Optional[Dict[Var, Term]]:
    """First-order matching; extends and returns `rho`, or None on failure."""
    rho = {} if rho is None else rho
    stack = [(pattern, target)]
    while stack:
        p, t = stack.pop()
        if isinstance(p, Var):
            bound = rho.get(p)
            if bound is None:
                if p.sort != t.sort:
                    return None
                rho[p] = t
            elif bound != t:
                return None
        elif isinstance(t, App) and p.symbol.name == t.symbol.name and len(p.args) == len(t.args):
            stack.extend(zip(p.args, t.args))
        else:
            return None
    return rho


def match_atom(
    pattern: Atom, target: Atom, rho: Optional[Dict[Var, Term]] = None
) -> Optional[Dict[Var, Term]]:
    rho = {} if rho is None else dict(rho)
    match pattern, target:
        case Eq(), Eq():
            rho = match_term(pattern.lhs, target.lhs, rho)
            return None if rho is None else match_term(pattern.rhs, target.rhs, rho)
        case Pred(), Pred():
            if pattern.symbol.name != target.symbol.name:
                return None
            for p, t in zip(pattern.args, target.args):
                rho = match_term(p, t, rho)
                if rho is None:
                    return None
            return rho
    return None
