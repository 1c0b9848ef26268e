import pytest
from hypothesis import given, strategies as st

from Core.Utils.exception import ArityMismatch, BaseMismatch, NoBoundary, SortMismatch, UnknownVariable, UnmappedSymbol
from Kernel.colimit import Diagram, coequalizer, coproduct, theory_colimit
from Kernel.enumerate import enumerate_terms
from Kernel.formula import TOP, Defined, Eq, Sequent, canonicalize, free_variables
from Kernel.morphism import (
    TheoryMorphism,
    apply_morphism,
    compose_morphisms,
    identity_morphism,
    inclusion_morphism,
)
from Kernel.sort import Sort
from Kernel.substitution import Substitution, compose_substitutions, match_term, substitute
from Kernel.symbol import FunSymbol, is_structural
from Kernel.term import App, Var, positions, replace_at, sort_of, subterm, term_key
from Kernel.theory import Axiom, Theory, boundary, is_small, validate_theory
from Stdlib.base import base_theory
from tests.conftest import nat_theory

NAT = nat_theory()
X, Y = Var("x", Sort.tm(0)), Var("y", Sort.tm(0))
ZERO = NAT.app("z")


def succ(t):
    return NAT.app("s", t)


terms = st.recursive(
    st.sampled_from([X, Y, ZERO]),
    lambda children: children.map(succ),
    max_leaves=6,
)
substitutions = st.fixed_dictionaries({X: terms, Y: terms}).map(Substitution)


def test_sort_aliases_and_printing():
    assert Sort.ty(0) == Sort.ctx(1)
    assert str(Sort.ty(2)) == "ty 2"
    assert str(Sort.ctx(0)) == "ctx 0"
    assert str(Sort.tm(1)) == "tm 1"
    assert Sort.parse("ty", 0).type_level == 0


def test_app_checks_arity_and_argument_sorts():
    with pytest.raises(ArityMismatch):
        App(NAT.fun("s"), ())
    with pytest.raises(SortMismatch) as info:
        App(NAT.fun("s"), (NAT.app("N"),))
    assert info.value.position == (1,)


def test_sort_of_checks_variables_against_the_context():
    ctx = {"x": Sort.tm(0)}
    assert sort_of(succ(X), ctx) == Sort.tm(0)
    assert sort_of(NAT.app("ty0", X), ctx) == Sort.ty(0)
    with pytest.raises(UnknownVariable):
        sort_of(succ(Y), ctx)
    with pytest.raises(SortMismatch) as info:
        sort_of(succ(X), {"x": Sort.tm(1)})
    assert info.value.position == (1,)


def test_boundary_by_sort(base):
    a = Var("a", Sort.tm(1))
    assert boundary(a, base) == base.app("ty1", a)
    assert boundary(base.app("ty1", a), base) == base.app("ft1", base.app("ty1", a))
    with pytest.raises(NoBoundary):
        boundary(base.app("emp"), base)


def test_positions_are_one_based_and_post_order():
    t = succ(succ(X))
    found = list(positions(t))
    assert found[-1] == ((), t)
    assert subterm(t, (1, 1)) == X
    assert replace_at(t, (1, 1), ZERO) == succ(succ(ZERO))


def test_term_order_is_depth_then_text():
    ordered = sorted([succ(ZERO), Y, X, ZERO], key=term_key)
    assert ordered == [X, Y, ZERO, succ(ZERO)]


@given(terms)
def test_canonicalize_is_idempotent(t):
    once = canonicalize(Defined(t))
    assert once == Eq(t, t)
    assert canonicalize(once) == once


@given(terms, substitutions, substitutions)
def test_substitution_composition(t, first, second):
    assert compose_substitutions(first, second).apply(t) == second.apply(first.apply(t))
    assert substitute(Defined(t), first) == Defined(first.apply(t))


@given(terms)
def test_match_recovers_the_substitution(t):
    pattern = succ(X)
    rho = match_term(pattern, succ(t))
    assert rho == {X: t}


def double():
    x1 = Var("x1", Sort.tm(0))
    return TheoryMorphism("double", NAT, NAT, {"s": ((x1,), succ(succ(x1)))})


@given(terms, substitutions)
def test_morphisms_commute_with_substitution(t, rho):
    f = double()
    translated = Substitution({v: apply_morphism(f, u) for v, u in rho.items()})
    assert apply_morphism(f, rho.apply(t)) == translated.apply(apply_morphism(f, t))


def test_morphism_translates_axioms():
    f = double()
    image = apply_morphism(f, NAT.axiom("s_def").sequent)
    assert image.rhs == (Defined(succ(succ(Var("x", Sort.tm(0))))),)


def test_identity_inclusion_and_composition(base):
    ident = identity_morphism(NAT)
    assert ident.fully_certified
    incl = inclusion_morphism(base, NAT)
    assert incl.fully_certified
    composed = compose_morphisms(double(), incl)
    assert apply_morphism(composed, base.app("emp")) == NAT.app("emp")
    with pytest.raises(UnmappedSymbol):
        inclusion_morphism(NAT, base)


def test_validate_theory_reports_open_sequents(nat):
    assert validate_theory(nat).valid
    stray = nat.extend(axioms=[Axiom("stray", Sequent((), TOP, (Defined(X),)))])
    report = validate_theory(stray)
    assert [e.kind for e in report.entries] == ["OpenSequent"]
    assert report.entries[0].where == "stray.rhs[1]"


def test_smallness_ignores_base_symbols(nat):
    assert is_small(nat, 6)
    assert not is_small(nat, 3)
    assert is_small(nat, None)


def test_free_variables_of_a_sequent():
    seq = Sequent((X,), (Eq(X, ZERO),), (Defined(succ(Y)),))
    assert free_variables(seq) == {X, Y}
    assert seq.open_variables() == {Y}


def test_enumerate_terms_is_deterministic(nat):
    first = enumerate_terms(nat, [X], 2)
    second = enumerate_terms(nat, [X], 2)
    assert first == second
    tm0 = first[Sort.tm(0)]
    assert tm0 == sorted(tm0, key=term_key)
    assert {X, ZERO, succ(X), succ(ZERO)} <= set(tm0)
    assert all(t.depth <= 2 for t in tm0)


def test_structural_names():
    assert is_structural("ty0") and is_structural("ft3")
    assert not is_structural("type0")


def _pointed(name: str) -> Theory:
    c = FunSymbol("c", (), Sort.ty(0))
    return base_theory(2).extend(name=name, funs=[c], axioms=[Axiom("c_def", Sequent((), TOP, (Defined(App(c, ())),)))])


def test_coproduct_suffixes_colliding_names():
    left, right = _pointed("left"), _pointed("right")
    result = coproduct([left, right], base_theory(2))
    assert {"c_1", "c_2", "c_def_1", "c_def_2"} <= set(result.theory.funs) | set(result.theory.axiom_map)
    assert result.renamings == {"left": {"c": "c_1"}, "right": {"c": "c_2"}}
    assert all(i.obligation_summary()["c_def"] == "assumed" for i in result.injections)


def test_coproduct_rejects_a_missing_base():
    with pytest.raises(BaseMismatch):
        coproduct([_pointed("p"), base_theory(1)], base_theory(2))


def test_coequalizer_glues_with_kleene_equality():
    pointed = _pointed("p")
    target = pointed.extend(name="two", funs=[FunSymbol("d", (), Sort.ty(0))])
    c_image = ((), target.app("c"))
    d_image = ((), target.app("d"))
    f = TheoryMorphism("f", pointed, target, {"c": c_image})
    g = TheoryMorphism("g", pointed, target, {"c": d_image})
    result = coequalizer(f, g, base_theory(2))
    glue = result.theory.axiom("coeq_c").sequent
    assert glue.lhs == (Defined(target.app("c")),)
    assert glue.rhs == (Eq(target.app("c"), target.app("d")),)
    assert result.theory.axiom("coeq_c_r").sequent.lhs == (Defined(target.app("d")),)


def test_colimit_of_a_span_adds_gluing_axioms():
    pointed = _pointed("p")
    target = pointed.extend(name="q")
    edge = inclusion_morphism(pointed, target, "incl")
    diagram = Diagram.build(base_theory(2), [pointed, target], [("p", "q", edge)])
    result = theory_colimit(diagram, "glued")
    assert result.theory.name == "glued"
    assert any(name.startswith("glue_incl_") for name in result.theory.axiom_map)
    assert len(result.injections) == 2
