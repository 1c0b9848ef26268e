from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

import networkx as nx

from Core.Enums.kernel import Verdict
from Core.Utils.exception import CyclicOrder, MissingSymbol, SortMismatch
from Core.Utils.helper import Helper
from Core.Utils.logger import Logger
from Deduction.prover import prove, verdict_of, worst
from Kernel.formula import Defined, Eq, Formula, Sequent, free_variables
from Kernel.morphism import parameters
from Kernel.substitution import Substitution
from Kernel.symbol import FunSymbol, is_structural
from Kernel.term import App, Term, symbols
from Kernel.theory import Theory, boundary

logger = Logger.get_logger()


@dataclass(frozen=True)
class DefiningTerm:
    """ft^depth(e_p(x_i)) = term, with term over x₁ … x_{i-1}."""

    depth: int
    term: Term

    def __str__(self) -> str:
        return f"{self.depth}:{self.term}" if self.depth else str(self.term)


@dataclass(frozen=True)
class WellDefinedCert:
    """A ranking of function symbols and the defining terms A₁ … A_k of each.

    σ < τ iff rank[σ] < rank[τ]; ty_n and ft_n need neither.
    """

    rank: Mapping[str, int]
    defining_terms: Mapping[str, Tuple[DefiningTerm, ...]] = field(default_factory=dict)

    def entries(self, symbol: str) -> Tuple[DefiningTerm, ...]:
        if symbol not in self.defining_terms:
            raise MissingSymbol(f"No defining terms for '{symbol}'")
        return self.defining_terms[symbol]

    def to_dict(self) -> Dict:
        return {
            "rank": dict(sorted(self.rank.items())),
            "defining_terms": {
                name: [str(e) for e in entries] for name, entries in sorted(self.defining_terms.items())
            },
        }


def iterated_boundary(t: Term, theory: Theory, depth: int) -> Term:
    """ft^depth(e_p(t))."""
    out = boundary(t, theory)
    for _ in range(depth):
        out = boundary(out, theory)
    return out


def defining_formula(
    theory: Theory, symbol: FunSymbol, entries: Tuple[DefiningTerm, ...], args: Tuple[Term, ...], upto: Optional[int] = None
) -> Formula:
    """⋀_{i ≤ upto} ft^m(e(t_i)) = A_i[t₁ … t_{i-1}]."""
    params = parameters(symbol)
    rho = Substitution(dict(zip(params, args)))
    count = len(entries) if upto is None else upto
    return tuple(
        Eq(iterated_boundary(args[i], theory, entries[i].depth), rho.apply_term(entries[i].term))
        for i in range(count)
    )


@dataclass(frozen=True)
class SymbolReport:
    symbol: str
    verdict: Verdict
    failures: Tuple[str, ...] = ()

    def to_dict(self) -> Dict:
        return {"symbol": self.symbol, "verdict": self.verdict.value, "failures": list(self.failures)}


@dataclass(frozen=True)
class WellDefinedReport:
    theory: str
    depth: int
    symbols: Tuple[SymbolReport, ...] = ()

    @property
    def verdict(self) -> Verdict:
        return worst(s.verdict for s in self.symbols)

    def to_dict(self) -> Dict:
        return {
            "theory": self.theory,
            "depth": self.depth,
            "verdict": self.verdict.value,
            "symbols": [s.to_dict() for s in self.symbols],
        }


def _exempt(theory: Theory, cand: WellDefinedCert, name: str) -> bool:
    return is_structural(name) or (name in theory.base_names and name not in cand.defining_terms)


def _check_order(theory: Theory, cand: WellDefinedCert) -> None:
    """Every symbol in a defining term must rank strictly below the symbol it defines."""
    graph = nx.DiGraph()
    for name, entries in cand.defining_terms.items():
        for entry in entries:
            for used in symbols(entry.term):
                if _exempt(theory, cand, used):
                    continue
                if used not in cand.rank:
                    raise MissingSymbol(f"'{used}' occurs in the defining terms of '{name}' but has no rank")
                graph.add_edge(used, name)
                if cand.rank[used] >= cand.rank.get(name, cand.rank[used]):
                    # the ranking puts `name` at or below `used`
                    graph.add_edge(name, used)
    try:
        cycle = nx.find_cycle(graph)
    except nx.NetworkXNoCycle:
        return
    names = [edge[0] for edge in cycle]
    raise CyclicOrder(f"Symbol order has a cycle through {names}", names)


def _check_symbol(theory: Theory, cand: WellDefinedCert, symbol: FunSymbol, depth: int, fuel: int) -> SymbolReport:
    entries = cand.entries(symbol.name)
    if len(entries) != symbol.arity:
        return SymbolReport(symbol.name, Verdict.REFUTED, (f"expected {symbol.arity} defining terms, got {len(entries)}",))
    params = parameters(symbol)
    failures: List[str] = []
    verdict = Verdict.CERTIFIED

    def record(label: str, v: Verdict) -> None:
        nonlocal verdict
        if v is Verdict.CERTIFIED:
            return
        failures.append(f"{label}: {v.value}")
        if verdict is not Verdict.REFUTED:
            verdict = v

    for i, entry in enumerate(entries):
        if not free_variables(entry.term) <= set(params[:i]):
            record(f"A_{i + 1} mentions later variables", Verdict.REFUTED)
        expected = iterated_boundary(params[i], theory, entry.depth).sort
        if entry.term.sort != expected:
            raise SortMismatch(
                f"Defining term {i + 1} of '{symbol.name}' has sort {entry.term.sort}, expected {expected}",
                (i + 1,),
            )
    if failures:
        return SymbolReport(symbol.name, verdict, tuple(failures))

    for j in range(symbol.arity):
        sequent = Sequent(
            params[:j], defining_formula(theory, symbol, entries, params, j), (Defined(entries[j].term),)
        )
        record(f"A_{j + 1} def", verdict_of(prove(theory, sequent, depth, fuel)))

    head = App(symbol, params)
    phi = defining_formula(theory, symbol, entries, params)
    record("defining terms |- defined", verdict_of(prove(theory, Sequent(params, phi, (Defined(head),)), depth, fuel)))
    if phi:
        record("defined |- defining terms", verdict_of(prove(theory, Sequent(params, (Defined(head),), phi), depth, fuel)))
    return SymbolReport(symbol.name, verdict, tuple(failures))


def check_well_defined(theory: Theory, cand: WellDefinedCert, depth: int, fuel: Optional[int] = None) -> WellDefinedReport:
    """Acyclic order, occurrence and scoping constraints, and the two sequent families per symbol."""
    fuel = Helper.get_settings().fuel if fuel is None else fuel
    for symbol in theory.fun_symbols:
        if not _exempt(theory, cand, symbol.name) and symbol.name not in cand.defining_terms:
            raise MissingSymbol(f"No defining terms for '{symbol.name}'")
        if not _exempt(theory, cand, symbol.name) and symbol.name not in cand.rank:
            raise MissingSymbol(f"'{symbol.name}' has no rank")
    _check_order(theory, cand)

    reports = [
        _check_symbol(theory, cand, symbol, depth, fuel)
        for symbol in theory.fun_symbols
        if not _exempt(theory, cand, symbol.name)
    ]
    report = WellDefinedReport(theory.name, depth, tuple(reports))
    logger.info("🪜 Well-defined symbols of '%s' at depth %d: %s", theory.name, depth, report.verdict.value)
    return report
