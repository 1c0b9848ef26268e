import pytest

from Core.Enums.kernel import EntryKind, Verdict
from Core.Utils.exception import MissingContextMetadata, MissingWitness, OutOfOrderReference, SortMismatch
from Kernel.formula import TOP, Defined, Eq, Sequent
from Kernel.sort import Sort
from Kernel.symbol import FunSymbol
from Kernel.term import Var
from Morita.context import context_analysis
from Morita.ext import check_ext_morita, extra_axioms
from Morita.homotopy import TermHtpy, TypeHtpy, validate_homotopy
from Morita.lifting import (
    Cond1Witness,
    LiftingInstance,
    check_cond1_witness,
    check_type_lifting,
    check_weak_lifting_instance,
    reflexive_homotopy,
    reflexive_provider,
    required_symbols,
)
from Morita.telescope import EMPTY_TELESCOPE, Hypotheses, Telescope, enumerate_telescopes, validate_telescope
from Stdlib.base import base_theory
from Stdlib.certificates import DERIVED_SYMBOLS
from Stdlib.registry import stdlib_morphism, stdlib_theory


@pytest.fixture(scope="module")
def contr_to_unit():
    return stdlib_morphism("contr_to_unit")


def unit_lift(f, **kwargs):
    source, target = f.source, f.target
    return LiftingInstance(f, EMPTY_TELESCOPE, source.app("C"), target.app("unit"), source.app("c0"), **kwargs)


def test_declared_telescopes_are_valid(t_pi):
    tel = stdlib_theory("t_pi").telescopes["fun_arg"]
    report = validate_telescope(t_pi, tel, depth=3)
    assert [e.var for e in report.entries] == ["A", "B", "f", "a"]
    assert report.valid


def test_forward_references_are_rejected(t_pi):
    A = Var("A", Sort.ty(0))
    tel = Telescope.build(t_pi, "early", [("B", A, EntryKind.TY)])
    with pytest.raises(OutOfOrderReference) as info:
        validate_telescope(t_pi, tel, depth=2)
    assert info.value.index == 1


def test_telescope_kinds_follow_the_assigned_level(t_pi):
    tel = stdlib_theory("t_pi").telescopes["fun_arg"]
    assert tel.var("A").sort == Sort.ty(0)
    assert tel.var("B").sort == Sort.ty(1)
    assert tel.var("a").sort == Sort.tm(0)
    with pytest.raises(SortMismatch):
        Telescope.build(t_pi, "bad", [("x", t_pi.app("emp"), EntryKind.TM)])


def test_enumerated_telescopes_are_deterministic():
    unit = stdlib_theory("unit").payload
    first = enumerate_telescopes(unit, 1, 1, limit=6, prove_depth=2, fuel=10)
    second = enumerate_telescopes(unit, 1, 1, limit=6, prove_depth=2, fuel=10)
    assert first[0] is EMPTY_TELESCOPE
    assert [str(t) for t in first] == [str(t) for t in second]
    assert 1 < len(first) <= 6
    assert all(len(t) <= 1 for t in first)


def test_reflexive_term_homotopy(contr_to_unit):
    theory = contr_to_unit.payload.target
    u = theory.app("unit")
    report = validate_homotopy(theory, EMPTY_TELESCOPE, u, u, reflexive_homotopy(theory, u), 3)
    assert report.verdict is Verdict.CERTIFIED
    assert [j.label for j in report.judgments] == ["h"]


def test_homotopy_ends_must_share_a_sort(t_pi):
    tel = stdlib_theory("t_pi").telescopes["fun_arg"]
    with pytest.raises(SortMismatch):
        validate_homotopy(t_pi, tel, tel.var("A"), tel.var("a"), TermHtpy(tel.var("a")), 2)


def test_type_homotopy_has_five_judgments():
    rt = stdlib_theory("refl_transport").payload
    A = Var("A", Sort.ty(0))
    ctx = Hypotheses((A,), TOP, "A")
    v = rt.app("v0", A)
    w = TypeHtpy(v, v, rt.app("refl1", v), v, rt.app("refl1", v))
    report = validate_homotopy(rt, ctx, A, A, w, 3)
    assert [j.label for j in report.judgments] == ["f", "g", "p", "g'", "p'"]
    assert report.verdict is not Verdict.REFUTED


def test_unit_lifts_to_the_centre(contr_to_unit):
    f = contr_to_unit.payload
    weak = check_weak_lifting_instance(unit_lift(f, homotopy=reflexive_homotopy(f.target, f.target.app("unit"))), 4)
    assert [c.label for c in weak.clauses] == ["i", "ii", "iii", "iv"]
    assert weak.verdict is Verdict.CERTIFIED
    assert weak.homotopy["verdict"] == "certified"

    strict = check_weak_lifting_instance(unit_lift(f, strict=True), 4)
    assert strict.verdict is Verdict.CERTIFIED


def test_weak_lifting_needs_a_homotopy(contr_to_unit):
    with pytest.raises(MissingWitness):
        check_weak_lifting_instance(unit_lift(contr_to_unit.payload), 2)


def test_condition_one_requires_every_target_symbol(contr_to_unit):
    f = contr_to_unit.payload
    witness = contr_to_unit.metadata.witness
    basic = required_symbols(f, witness, basic_only=True)
    assert {"top", "unit", "refl", "Id"} <= set(basic)
    assert not set(DERIVED_SYMBOLS) & set(basic)
    assert {"wk", "v0", "comp1"} <= set(required_symbols(f, witness, basic_only=False))
    with pytest.raises(MissingWitness):
        check_cond1_witness(f, Cond1Witness({}), 2)


def test_identical_types_lift_to_the_variable():
    f = stdlib_morphism("pi_incl").payload
    tel = stdlib_theory("t_pi").telescopes["fun_arg"]
    report = check_type_lifting(f, [tel], reflexive_provider(f.source, 2, 10), 2, fuel=10, samples=20)
    assert report.pairs >= 1
    assert report.verdict is not Verdict.REFUTED


def test_extra_axioms_of_an_inclusion():
    f = stdlib_morphism("pi_incl").payload
    assert [ax.name for ax in extra_axioms(f)] == ["beta_def"]


def test_vacuous_extension(base):
    x = Var("x", Sort.tm(0))
    never = Sequent((x,), (Defined(x),), (Eq(x, x),))
    report = check_ext_morita(base, [never], [EMPTY_TELESCOPE], sub_depth=1, depth=2, fuel=10, slack=1)
    assert report.premises == 0
    assert report.verdict is Verdict.CERTIFIED


def test_context_analysis():
    base = base_theory(2)
    gamma = Var("G", Sort.ctx(0))
    a = Var("a", Sort.tm(0))
    ext = FunSymbol("ext", (Sort.ctx(0), Sort.tm(0)), Sort.tm(0), 0)
    bare = FunSymbol("bare", (Sort.ctx(0), Sort.tm(0)), Sort.tm(0))
    theory = base.extend(name="ctx", funs=[ext, bare])

    plain = context_analysis(theory.app("ty0", a), theory)
    assert plain.ft_free and not plain.contexts and plain.is_context_normal

    A = Var("A", Sort.ty(0))
    assert not context_analysis(theory.app("ft0", A), theory).ft_free

    nested = context_analysis(theory.app("ext", gamma, theory.app("ext", gamma, a)), theory)
    assert nested.contexts == frozenset({gamma})
    assert nested.is_context_normal

    with pytest.raises(MissingContextMetadata):
        context_analysis(theory.app("bare", gamma, a), theory)


def test_contexts_of_dependent_product_terms(t_pi):
    A, B = Var("A", Sort.ty(0)), Var("B", Sort.ty(0))
    b = Var("b", Sort.tm(1))

    variable = context_analysis(t_pi.app("v0", A), t_pi)
    assert variable.contexts == frozenset({A})
    assert variable.is_context_normal

    assert context_analysis(t_pi.app("wk", A, B), t_pi).contexts == frozenset({A})
    assert context_analysis(t_pi.app("ty1", t_pi.app("v0", B)), t_pi).contexts == frozenset({B})
    assert not context_analysis(t_pi.app("lam", A, b), t_pi).contexts
    assert not context_analysis(t_pi.app("ft1", t_pi.app("wk", A, B)), t_pi).ft_free


def test_several_contexts_are_not_context_normal():
    theory = stdlib_theory("refl_transport").payload
    A, B, C = (Var(name, Sort.ty(0)) for name in "ABC")
    g, f = Var("g", Sort.tm(1)), Var("f", Sort.tm(1))
    analysis = context_analysis(theory.app("comp1", A, B, C, g, f), theory)
    assert analysis.contexts == frozenset({A, B, C})
    assert analysis.ft_free and not analysis.is_context_normal


def test_unannotated_context_symbols_cannot_be_classified(t_pi):
    A, B = Var("A", Sort.ty(0)), Var("B", Sort.ty(0))
    theory = t_pi.extend(name="pi_wk1", funs=[FunSymbol("wk1", (Sort.ty(0), Sort.ty(0)), Sort.ty(1))])
    with pytest.raises(MissingContextMetadata):
        context_analysis(theory.app("wk1", A, B), theory)


@pytest.mark.slow
def test_stored_witness_lifts_every_symbol(contr_to_unit):
    report = check_cond1_witness(contr_to_unit.payload, contr_to_unit.metadata.witness, 4)
    assert report.verdict is Verdict.CERTIFIED


@pytest.mark.slow
def test_beta_extension_holds_on_enumerated_instances(t_pi):
    f = stdlib_morphism("pi_incl").payload
    tels = enumerate_telescopes(t_pi, 2, 2, limit=20)
    report = check_ext_morita(t_pi, extra_axioms(f), tels, sub_depth=2, depth=4, slack=2)
    assert report.failures == []
