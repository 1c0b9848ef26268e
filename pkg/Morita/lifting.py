from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Tuple

from Core.Enums.kernel import Verdict
from Core.Utils.exception import MissingWitness
from Core.Utils.helper import Helper
from Core.Utils.logger import Logger
from Deduction.prover import freshen, prove, verdict_of, worst
from Deduction.saturation import saturate
from Kernel.formula import TOP, Defined, Eq, Sequent
from Kernel.morphism import TheoryMorphism, apply_morphism, parameters
from Kernel.sort import Sort
from Kernel.symbol import is_structural
from Kernel.term import App, Term, term_key
from Kernel.theory import Theory, boundary
from Morita.homotopy import HomotopyWitness, Judgment, TermHtpy, validate_homotopy
from Morita.telescope import Context, Hypotheses, Telescope
from Structure.welldefined import DefiningTerm, SymbolReport, WellDefinedCert, defining_formula

logger = Logger.get_logger()

Provider = Callable[[Telescope, Term, Term], Optional[Term]]


def image_context(f: TheoryMorphism, ctx: Context) -> Hypotheses:
    """f(V, φ): same variables, translated formula."""
    hyp = ctx.hypotheses(f.source)
    return Hypotheses(hyp.var_ctx, apply_morphism(f, hyp.formula), f"{f.name}({hyp.name})")


@dataclass(frozen=True)
class LiftingInstance:
    """Lift a : e_p(a) = f(A) in the target to a′ : A in the source."""

    morphism: TheoryMorphism
    context: Context
    source_type: Term
    target_term: Term
    candidate: Term
    homotopy: Optional[HomotopyWitness] = None
    strict: bool = False


@dataclass(frozen=True)
class LiftingReport:
    clauses: Tuple[Judgment, ...]
    homotopy: Optional[Dict] = field(default=None, compare=False)

    @property
    def verdict(self) -> Verdict:
        return worst(c.verdict for c in self.clauses)

    def to_dict(self) -> Dict:
        out = {"verdict": self.verdict.value, "clauses": [c.to_dict() for c in self.clauses]}
        if self.homotopy is not None:
            out["homotopy"] = self.homotopy
        return out


def _clause(theory: Theory, ctx: Context, label: str, goal, depth: int, fuel: int) -> Judgment:
    return Judgment(label, verdict_of(prove(theory, ctx.sequent((goal,)), depth, fuel)), str(goal))


def check_weak_lifting_instance(inst: LiftingInstance, depth: int, fuel: Optional[int] = None) -> LiftingReport:
    """Clauses (i) A def, (ii) boundary of a, (iii) boundary of a′, (iv) f(a′) ~ a or f(a′) = a."""
    fuel = Helper.get_settings().fuel if fuel is None else fuel
    f = inst.morphism
    source, target = f.source, f.target
    image = image_context(f, inst.context)
    lifted = apply_morphism(f, inst.candidate)

    clauses = [
        _clause(source, inst.context, "i", Defined(inst.source_type), depth, fuel),
        _clause(target, image, "ii", Eq(boundary(inst.target_term, target), apply_morphism(f, inst.source_type)), depth, fuel),
        _clause(source, inst.context, "iii", Eq(boundary(inst.candidate, source), inst.source_type), depth, fuel),
    ]
    homotopy = None
    if inst.strict:
        clauses.append(_clause(target, image, "iv", Eq(lifted, inst.target_term), depth, fuel))
    else:
        if inst.homotopy is None:
            raise MissingWitness(f"Weak lifting of {inst.target_term} along '{f.name}' needs a homotopy")
        report = validate_homotopy(target, image, lifted, inst.target_term, inst.homotopy, depth, fuel)
        clauses.append(Judgment("iv", report.verdict, f"{lifted} ~ {inst.target_term}"))
        homotopy = report.to_dict()

    report = LiftingReport(tuple(clauses), homotopy)
    logger.info(
        "🪝 Lifting %s by %s along '%s' (%s): %s",
        inst.target_term, inst.candidate, f.name, "strict" if inst.strict else "weak", report.verdict.value,
    )
    return report


def reflexive_homotopy(theory: Theory, a: Term) -> TermHtpy:
    """refl(a) at the level of a."""
    name = "refl" if a.sort.level == 0 else f"refl{a.sort.level}"
    return TermHtpy(theory.app(name, a))


@dataclass(frozen=True)
class Cond1Entry:
    """Terms A₁ … A_k (with boundary depths) and t over the target symbol's parameters."""

    defining: Tuple[DefiningTerm, ...]
    term: Term

    def to_dict(self) -> Dict:
        return {"defining": [str(d) for d in self.defining], "term": str(self.term)}


@dataclass(frozen=True)
class Cond1Witness:
    """Per target symbol, the source data lifting it; `derived` names symbols skipped in basic mode."""

    entries: Mapping[str, Cond1Entry]
    derived: Tuple[str, ...] = ()

    def to_dict(self) -> Dict:
        return {
            "entries": {name: e.to_dict() for name, e in sorted(self.entries.items())},
            "derived": sorted(self.derived),
        }


def identity_witness(theory: Theory, cert: WellDefinedCert, derived: Iterable[str] = ()) -> Cond1Witness:
    """t = σ(x̄) with the certificate's defining terms, for every ranked symbol."""
    entries = {}
    for name, defining in cert.defining_terms.items():
        symbol = theory.fun(name)
        entries[name] = Cond1Entry(tuple(defining), App(symbol, parameters(symbol)))
    return Cond1Witness(entries, tuple(derived))


@dataclass(frozen=True)
class Cond1Report:
    morphism: str
    basic_only: bool
    symbols: Tuple[SymbolReport, ...] = ()

    @property
    def verdict(self) -> Verdict:
        return worst(s.verdict for s in self.symbols)

    def to_dict(self) -> Dict:
        return {
            "morphism": self.morphism,
            "basic_only": self.basic_only,
            "verdict": self.verdict.value,
            "symbols": [s.to_dict() for s in self.symbols],
        }


def required_symbols(f: TheoryMorphism, w: Cond1Witness, basic_only: bool) -> List[str]:
    names = [
        s.name for s in f.target.fun_symbols
        if not is_structural(s.name) and s.name not in f.target.base_names
    ]
    if basic_only:
        names = [n for n in names if n not in w.derived]
    return names


def _cond1_symbol(f: TheoryMorphism, name: str, entry: Cond1Entry, depth: int, fuel: int) -> SymbolReport:
    source, target = f.source, f.target
    symbol = target.fun(name)
    if len(entry.defining) != symbol.arity:
        return SymbolReport(name, Verdict.REFUTED, (f"expected {symbol.arity} terms, got {len(entry.defining)}",))
    params = parameters(symbol)
    failures, verdicts = [], []

    def record(label: str, v: Verdict) -> None:
        verdicts.append(v)
        if v is not Verdict.CERTIFIED:
            failures.append(f"{label}: {v.value}")

    for j in range(symbol.arity):
        premise = defining_formula(source, symbol, entry.defining, params, j)
        goal = Sequent(params[:j], premise, (Defined(entry.defining[j].term),))
        record(f"A_{j + 1} def", verdict_of(prove(source, goal, depth, fuel)))

    phi = defining_formula(source, symbol, entry.defining, params)
    record("t def", verdict_of(prove(source, Sequent(params, phi, (Defined(entry.term),)), depth, fuel)))

    head = App(symbol, params)
    rhs = (Eq(apply_morphism(f, entry.term), head),) + apply_morphism(f, phi)
    record("target", verdict_of(prove(target, Sequent(params, (Defined(head),), rhs), depth, fuel)))
    return SymbolReport(name, worst(verdicts), tuple(failures))


def check_cond1_witness(
    f: TheoryMorphism, w: Cond1Witness, depth: int, basic_only: bool = False, fuel: Optional[int] = None
) -> Cond1Report:
    """Certify the three sequent families for every required target symbol."""
    fuel = Helper.get_settings().fuel if fuel is None else fuel
    names = required_symbols(f, w, basic_only)
    missing = [n for n in names if n not in w.entries]
    if missing:
        raise MissingWitness(f"No lifting data for {missing} along '{f.name}'")
    report = Cond1Report(f.name, basic_only, tuple(_cond1_symbol(f, n, w.entries[n], depth, fuel) for n in names))
    logger.info("🧷 Condition 1 for '%s' (%d symbols, basic_only=%s): %s", f.name, len(names), basic_only, report.verdict.value)
    return report


@dataclass(frozen=True)
class TypeLiftingReport:
    morphism: str
    pairs: int
    failures: Tuple[str, ...] = ()
    undecided: Tuple[str, ...] = ()

    @property
    def verdict(self) -> Verdict:
        if self.failures:
            return Verdict.REFUTED
        return Verdict.INCONCLUSIVE if self.undecided else Verdict.CERTIFIED

    def to_dict(self) -> Dict:
        return {
            "morphism": self.morphism,
            "pairs": self.pairs,
            "verdict": self.verdict.value,
            "failures": list(self.failures),
            "undecided": list(self.undecided),
        }


def type_pairs(theory: Theory, tel: Telescope, depth: int, fuel: int) -> List[Tuple[Term, Term]]:
    """(A, B) of level-0 types defined under tel with ft(A) = ft(B) derived, in term order."""
    fresh = freshen(theory, tel.sequent(TOP))
    facts = saturate(fresh.theory, depth, fuel)
    types = sorted(facts.defined_terms(Sort.ty(0)), key=term_key)
    pairs = []
    for a in types:
        for b in types:
            if Eq(boundary(a, theory), boundary(b, theory)) in facts:
                pairs.append((fresh.restore(a), fresh.restore(b)))
    return pairs


def reflexive_provider(theory: Theory, depth: int, fuel: Optional[int] = None) -> Provider:
    """v0(A) whenever A = B is derivable in `theory` under the telescope."""
    fuel = Helper.get_settings().fuel if fuel is None else fuel

    def provide(tel: Telescope, a: Term, b: Term) -> Optional[Term]:
        if a != b and not prove(theory, tel.sequent((Eq(a, b),)), depth, fuel).certified:
            return None
        return theory.app("v0", a)

    return provide


def check_type_lifting(
    f: TheoryMorphism,
    tels: Iterable[Telescope],
    provider: Provider,
    depth: int,
    fuel: Optional[int] = None,
    samples: Optional[int] = None,
) -> TypeLiftingReport:
    """For pairs identified by f, the provider's b must have ty(b) = wk(A, B) and f(b) = v0(f(A))."""
    settings = Helper.get_settings()
    fuel = settings.fuel if fuel is None else fuel
    samples = settings.samples if samples is None else samples
    source, target = f.source, f.target

    checked, failures, undecided = 0, [], []
    for tel in tels:
        image = image_context(f, tel)
        for a, b in type_pairs(source, tel, depth, fuel):
            if checked >= samples:
                break
            fa, fb = apply_morphism(f, a), apply_morphism(f, b)
            if not prove(target, image.sequent((Eq(fa, fb),)), depth, fuel).certified:
                continue
            checked += 1
            where = f"{tel.name}: ({a}, {b})"
            lift = provider(tel, a, b)
            if lift is None:
                failures.append(f"{where}: no lift")
                continue
            typing = verdict_of(prove(source, tel.sequent((Eq(boundary(lift, source), source.app("wk", a, b)),)), depth, fuel))
            variable = verdict_of(prove(target, image.sequent((Eq(apply_morphism(f, lift), target.app("v0", fa)),)), depth, fuel))
            for label, v in (("typing", typing), ("variable", variable)):
                if v is Verdict.REFUTED:
                    failures.append(f"{where}: {label} of {lift}")
                elif v is Verdict.INCONCLUSIVE:
                    undecided.append(f"{where}: {label} of {lift}")

    report = TypeLiftingReport(f.name, checked, tuple(failures), tuple(undecided))
    logger.info("🧬 Type lifting along '%s': %d pairs, %s", f.name, checked, report.verdict.value)
    return report
