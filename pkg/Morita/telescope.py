from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple, Union

from Core.Enums.kernel import EntryKind, SortKind, Verdict
from Core.Utils.exception import OutOfOrderReference, SortMismatch
from Core.Utils.helper import Helper
from Core.Utils.logger import Logger
from Deduction.prover import prove, verdict_of, worst
from Kernel.formula import TOP, Defined, Eq, Formula, Sequent, free_variables, format_formula
from Kernel.sort import Sort
from Kernel.enumerate import enumerate_terms
from Kernel.term import Term, Var, term_key
from Kernel.theory import Theory, boundary

logger = Logger.get_logger()


@dataclass(frozen=True)
class TelescopeEntry:
    """x : p with e_p(x) = assigned; `boundary` is the term e_p(x)."""

    var: Var
    kind: EntryKind
    assigned: Term
    boundary: Term

    def __str__(self) -> str:
        return f"{self.var.name} : {self.kind.value} := {self.assigned}"


def variable_sort(kind: EntryKind, assigned_sort: Sort) -> Sort:
    """Sort of a variable whose boundary has sort `assigned_sort`."""
    if assigned_sort.kind is not SortKind.CTX:
        raise SortMismatch(f"Boundary terms have kind ctx, got {assigned_sort}")
    if kind is EntryKind.TM:
        if assigned_sort.level == 0:
            raise SortMismatch("A term variable needs a type, got a ctx 0 term")
        return Sort.tm(assigned_sort.level - 1)
    return Sort.ctx(assigned_sort.level + 1)


def default_kind(assigned_sort: Sort) -> EntryKind:
    return EntryKind.TM if assigned_sort.level >= 1 else EntryKind.TY


@dataclass(frozen=True)
class Hypotheses:
    """A plain V and φ, accepted wherever a telescope is."""

    var_ctx: Tuple[Var, ...]
    formula: Formula = TOP
    name: str = "hypotheses"

    def hypotheses(self, theory: Theory) -> "Hypotheses":
        return self

    def sequent(self, rhs: Formula) -> Sequent:
        return Sequent(self.var_ctx, self.formula, rhs)

    def __str__(self) -> str:
        ctx = ", ".join(f"{v.name} : {v.sort}" for v in self.var_ctx)
        return f"[{ctx}] {format_formula(self.formula)}"


@dataclass(frozen=True)
class Telescope:
    name: str
    entries: Tuple[TelescopeEntry, ...] = ()

    @staticmethod
    def build(
        theory: Theory,
        name: str,
        specs: Iterable[Tuple[str, Term, Optional[EntryKind]]],
    ) -> "Telescope":
        """Entries from (variable name, assigned term, kind or None)."""
        entries = []
        for var_name, assigned, kind in specs:
            kind = kind or default_kind(assigned.sort)
            var = Var(var_name, variable_sort(kind, assigned.sort))
            entries.append(TelescopeEntry(var, kind, assigned, boundary(var, theory)))
        return Telescope(name, tuple(entries))

    @property
    def variables(self) -> Tuple[Var, ...]:
        return tuple(e.var for e in self.entries)

    def var(self, name: str) -> Var:
        for entry in self.entries:
            if entry.var.name == name:
                return entry.var
        raise KeyError(name)

    @property
    def formula(self) -> Formula:
        """φ = ⋀ e_p(x_i) = t_i."""
        return tuple(Eq(e.boundary, e.assigned) for e in self.entries)

    def hypotheses(self, theory: Optional[Theory] = None) -> Hypotheses:
        return Hypotheses(self.variables, self.formula, self.name)

    def sequent(self, rhs: Formula) -> Sequent:
        return Sequent(self.variables, self.formula, rhs)

    def prefix(self, length: int) -> "Telescope":
        return Telescope(f"{self.name}[:{length}]", self.entries[:length])

    def appended(self, entry: TelescopeEntry) -> "Telescope":
        return Telescope(self.name, self.entries + (entry,))

    def __len__(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return "[" + "; ".join(str(e) for e in self.entries) + "]"


EMPTY_TELESCOPE = Telescope("empty")

Context = Union[Telescope, Hypotheses]


@dataclass(frozen=True)
class EntryReport:
    index: int
    var: str
    verdict: Verdict
    detail: str = ""

    def to_dict(self) -> Dict:
        return {"index": self.index, "var": self.var, "verdict": self.verdict.value, "detail": self.detail}


@dataclass(frozen=True)
class TelescopeReport:
    telescope: str
    entries: Tuple[EntryReport, ...] = field(default_factory=tuple)

    @property
    def verdict(self) -> Verdict:
        return worst(e.verdict for e in self.entries)

    @property
    def valid(self) -> bool:
        return self.verdict is Verdict.CERTIFIED

    def to_dict(self) -> Dict:
        return {
            "telescope": self.telescope,
            "verdict": self.verdict.value,
            "entries": [e.to_dict() for e in self.entries],
        }


def check_telescope_syntax(theory: Theory, tel: Telescope) -> None:
    """Raise on forward references and boundary sort mismatches."""
    earlier: set = set()
    for index, entry in enumerate(tel.entries, start=1):
        if not free_variables(entry.assigned) <= earlier:
            raise OutOfOrderReference(
                f"Entry {index} ({entry.var.name}) mentions variables not bound before it", index
            )
        expected = boundary(entry.var, theory)
        if expected != entry.boundary or expected.sort != entry.assigned.sort:
            raise SortMismatch(
                f"Entry {index} ({entry.var.name}) assigns {entry.assigned.sort}, boundary has {expected.sort}",
                (index,),
            )
        earlier.add(entry.var)


def validate_telescope(theory: Theory, tel: Telescope, depth: Optional[int] = None, fuel: Optional[int] = None) -> TelescopeReport:
    """Checks order and sorts, then certifies φ_<i ⊢ t_i def for each entry."""
    settings = Helper.get_settings()
    depth = settings.depth if depth is None else depth
    fuel = settings.fuel if fuel is None else fuel
    check_telescope_syntax(theory, tel)

    reports: List[EntryReport] = []
    for index, entry in enumerate(tel.entries, start=1):
        prefix = tel.prefix(index - 1)
        outcome = prove(theory, prefix.sequent((Defined(entry.assigned),)), depth, fuel)
        reports.append(EntryReport(index, entry.var.name, verdict_of(outcome), str(entry.assigned)))
    report = TelescopeReport(tel.name, tuple(reports))
    logger.info("🧾 Telescope '%s' (%d entries): %s", tel.name, len(tel), report.verdict.value)
    return report


def enumerate_telescopes(
    theory: Theory,
    length: int,
    depth: int,
    limit: Optional[int] = None,
    prove_depth: Optional[int] = None,
    fuel: Optional[int] = None,
) -> List[Telescope]:
    """Valid telescopes of at most `length` entries whose assigned terms have depth ≤ `depth`.

    Entries take their default kind; an extension is kept only when its new
    assigned term is certified defined under the prefix. Deterministic.
    """
    settings = Helper.get_settings()
    limit = settings.samples if limit is None else limit
    prove_depth = settings.depth if prove_depth is None else prove_depth
    fuel = settings.fuel if fuel is None else fuel

    out: List[Telescope] = [EMPTY_TELESCOPE]
    frontier = [EMPTY_TELESCOPE]
    for size in range(1, length + 1):
        grown: List[Telescope] = []
        for tel in frontier:
            pools = enumerate_terms(theory, tel.variables, depth, limit=limit)
            candidates = sorted(
                (t for sort, terms in pools.items() if sort.kind is SortKind.CTX for t in terms),
                key=term_key,
            )
            for assigned in candidates:
                if len(out) + len(grown) >= limit:
                    break
                name = f"x{size}"
                entry_tel = Telescope.build(theory, "", [(name, assigned, None)])
                extended = Telescope(f"tel{len(out) + len(grown)}", tel.entries + entry_tel.entries)
                if prove(theory, tel.sequent((Defined(assigned),)), prove_depth, fuel).certified:
                    grown.append(extended)
        out.extend(grown)
        frontier = grown
    logger.debug("🧾 Enumerated %d telescopes up to length %d, depth %d", len(out), length, depth)
    return out[:limit]
