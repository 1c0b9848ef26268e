import pytest
from hypothesis import given, strategies as st

from Core.Enums.kernel import ObligationStatus, RuleName, Verdict
from Core.Utils.exception import LhsDrift, RuleMismatch, SideConditionFailed, UnknownAxiom
from Deduction.derivation import DerivationTree, NaPayload, NhPayload, check_derivation, leaf
from Deduction.prover import certify_obligations, freshen, prove, split_sequent, verdict_of, worst
from Deduction.saturation import saturate
from Kernel.formula import TOP, Defined, Eq, Sequent
from Kernel.morphism import TheoryMorphism
from Kernel.sort import Sort
from Kernel.symbol import FunSymbol
from Kernel.term import App, Var
from Kernel.theory import Axiom
from Stdlib.base import base_theory
from tests.conftest import nat_theory

NAT = nat_theory()
X = Var("x", Sort.tm(0))
N, ZERO = NAT.app("N"), NAT.app("z")
ON_N = (Eq(NAT.app("ty0", X), N),)


def succ(t):
    return NAT.app("s", t)


def two_points():
    a = FunSymbol("a", (), Sort.tm(0))
    b = FunSymbol("b", (), Sort.tm(0))
    return base_theory(2).extend(
        name="two_points",
        funs=[a, b],
        axioms=[
            Axiom("a_def", Sequent((), TOP, (Defined(App(a, ())),))),
            Axiom("b_def", Sequent((), TOP, (Defined(App(b, ())),))),
        ],
    )


TM0 = Sort.tm(0)
VARIABLES = (X, Var("y", TM0), Var("w", TM0))


def draw_term(draw, funs, leaves, depth):
    """Leaves are variables and constants; never empty."""
    pool = list(leaves) + [App(f, ()) for f in funs if f.arity == 0]
    unary = [f for f in funs if f.arity == 1]
    if depth == 0 or not unary or draw(st.booleans()):
        return draw(st.sampled_from(pool))
    return App(draw(st.sampled_from(unary)), (draw_term(draw, funs, leaves, depth - 1),))


def draw_atom(draw, funs, leaves, depth=3):
    t = draw_term(draw, funs, leaves, depth)
    if draw(st.booleans()):
        return Defined(t)
    return Eq(t, draw_term(draw, funs, leaves, depth))


def draw_sequent(draw, funs, premises, conclusions):
    least = 0 if any(f.arity == 0 for f in funs) else 1
    variables = VARIABLES[: draw(st.integers(least, len(VARIABLES)))]
    lhs = tuple(draw_atom(draw, funs, variables) for _ in range(draw(st.integers(0, premises))))
    rhs = tuple(draw_atom(draw, funs, variables) for _ in range(draw(st.integers(1, conclusions))))
    return Sequent(variables, lhs, rhs)


@st.composite
def small_theories(draw):
    """Up to three constant or unary symbols on tm 0 and up to two axioms over them."""
    arities = draw(st.lists(st.integers(0, 1), min_size=1, max_size=3))
    funs = [FunSymbol(f"f{i}", (TM0,) * arity, TM0) for i, arity in enumerate(arities)]
    axioms = [
        Axiom(f"ax{i}", draw_sequent(draw, funs, premises=1, conclusions=1))
        for i in range(draw(st.integers(0, 2)))
    ]
    return base_theory(2).extend(name="random", funs=funs, axioms=axioms)


@st.composite
def theories_with_goals(draw, goals=5, premises=1):
    theory = draw(small_theories())
    funs = theory.own_funs
    return theory, [draw_sequent(draw, funs, premises, conclusions=3) for _ in range(goals)]


def test_hypothesis_and_symmetry_check():
    seq = lambda atom: Sequent((X,), (Eq(X, ZERO),), (atom,))  # noqa: E731
    hyp = leaf(RuleName.NH, seq(Eq(X, ZERO)), NhPayload(0))
    sym = DerivationTree(RuleName.NS, seq(Eq(ZERO, X)), (hyp,))
    assert check_derivation(NAT, sym) == seq(Eq(ZERO, X))

    wrong = DerivationTree(RuleName.NS, seq(Eq(X, ZERO)), (hyp,))
    with pytest.raises(RuleMismatch):
        check_derivation(NAT, wrong)


def test_premise_left_hand_sides_must_agree():
    hyp = leaf(RuleName.NH, Sequent((X,), (Eq(X, ZERO),), (Eq(X, ZERO),)), NhPayload(0))
    drifted = DerivationTree(RuleName.NS, Sequent((X,), TOP, (Eq(ZERO, X),)), (hyp,))
    with pytest.raises(LhsDrift) as info:
        check_derivation(NAT, drifted)
    assert info.value.path == (1,)


def test_variable_rule_and_unknown_axioms():
    assert check_derivation(NAT, leaf(RuleName.NV, Sequent((X,), TOP, (Defined(X),))))
    with pytest.raises(SideConditionFailed):
        check_derivation(NAT, leaf(RuleName.NV, Sequent((X,), TOP, (Defined(ZERO),))))
    bogus = leaf(RuleName.NA, Sequent((), TOP, (Defined(ZERO),)), NaPayload("nope", (), 0))
    with pytest.raises(UnknownAxiom):
        check_derivation(NAT, bogus)


def test_axiom_instances_need_their_premises():
    closed = lambda atom: Sequent((), TOP, (atom,))  # noqa: E731
    z_def = DerivationTree(RuleName.NA, closed(Defined(ZERO)), (), NaPayload("z_def", (), 0))
    z_ty = DerivationTree(RuleName.NA, closed(Eq(NAT.app("ty0", ZERO), N)), (), NaPayload("z_ty", (), 0))
    s_def = DerivationTree(
        RuleName.NA, closed(Defined(succ(ZERO))), (z_def, z_ty), NaPayload("s_def", (ZERO,), 0)
    )
    assert check_derivation(NAT, s_def).rhs == (Defined(succ(ZERO)),)

    missing = DerivationTree(RuleName.NA, closed(Defined(succ(ZERO))), (z_def,), NaPayload("s_def", (ZERO,), 0))
    with pytest.raises(RuleMismatch):
        check_derivation(NAT, missing)


def test_prove_certifies_with_checked_derivations():
    goal = Sequent((X,), ON_N, (Eq(NAT.app("ty0", succ(succ(X))), N),))
    outcome = prove(NAT, goal, 3, 20)
    assert outcome.certified
    assert verdict_of(outcome) is Verdict.CERTIFIED
    for tree in outcome.derivations:
        assert check_derivation(NAT, tree).var_ctx == (X,)


def test_prove_is_inconclusive_on_open_ended_theories():
    outcome = prove(NAT, Sequent((), TOP, (Eq(ZERO, succ(ZERO)),)), 3, 20)
    assert not outcome.certified
    assert not outcome.complete
    assert verdict_of(outcome) is Verdict.INCONCLUSIVE


def test_complete_saturation_refutes():
    theory = two_points()
    outcome = prove(theory, Sequent((), TOP, (Eq(theory.app("a"), theory.app("b")),)), 3, 20)
    assert outcome.complete
    assert verdict_of(outcome) is Verdict.REFUTED


@given(theories_with_goals())
def test_conjunctions_split(case):
    theory, sequents = case
    for whole in sequents:
        parts = [prove(theory, part, 3, 20).certified for part in split_sequent(whole)]
        assert prove(theory, whole, 3, 20).certified == all(parts)


@given(st.lists(st.sampled_from([0, 1, 2, 3]), min_size=1, max_size=3))
def test_conjunctions_split_over_nat(depths):
    atoms = []
    for d in depths:
        t = X
        for _ in range(d):
            t = succ(t)
        atoms.append(Eq(NAT.app("ty0", t), N))
    whole = Sequent((X,), ON_N, tuple(atoms))
    parts = [prove(NAT, part, 3, 20).certified for part in split_sequent(whole)]
    assert prove(NAT, whole, 3, 20).certified == all(parts)


@given(theories_with_goals(goals=2, premises=2))
def test_freshening_agrees_with_the_open_sequent(case):
    theory, sequents = case
    for goal in sequents:
        fresh = freshen(theory, goal)
        closed = prove(fresh.theory, Sequent((), TOP, fresh.goal), 3, 20)
        assert closed.certified == prove(theory, goal, 3, 20).certified
        for var in goal.var_ctx:
            assert fresh.restore(fresh.substitution[var]) == var
        assert len(fresh.hypothesis_axioms) == len(goal.lhs)


def test_freshening_a_nat_sequent():
    goal = Sequent((X,), ON_N, (Defined(succ(X)),))
    fresh = freshen(NAT, goal)
    closed = prove(fresh.theory, Sequent((), TOP, fresh.goal), 3, 20)
    assert closed.certified == prove(NAT, goal, 3, 20).certified
    assert closed.certified
    assert fresh.restore(fresh.substitution[X]) == X


def test_saturation_grows_with_depth():
    small, large = saturate(NAT, 2, 20), saturate(NAT, 3, 20)
    assert set(small) <= set(large)
    assert small.is_defined(succ(ZERO))
    assert small.truncated


def test_certify_obligations_on_a_renaming():
    theory = two_points()
    swap = TheoryMorphism("swap", theory, theory, {"a": ((), theory.app("b")), "b": ((), theory.app("a"))})
    checked = certify_obligations(swap, 2, 10)
    assert set(checked.obligation_summary().values()) == {ObligationStatus.CERTIFIED.value}


def test_worst_verdict_order():
    assert worst([Verdict.CERTIFIED, Verdict.INCONCLUSIVE]) is Verdict.INCONCLUSIVE
    assert worst([Verdict.INCONCLUSIVE, Verdict.REFUTED]) is Verdict.REFUTED
    assert worst([]) is Verdict.CERTIFIED
