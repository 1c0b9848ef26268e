import pytest

from Commands.common import directed_trs, term
from Core.Enums.kernel import Verdict
from Core.Utils.exception import EscapingVariable, FuelExhausted, KernelError, VariableLhs
from Kernel.sort import Sort
from Kernel.symbol import FunSymbol
from Kernel.term import App, Var
from Morita.telescope import EMPTY_TELESCOPE, Telescope
from Rewriting.analysis import (
    check_local_confluence,
    check_morita_conf_hypotheses,
    check_orthogonal,
    rename_apart,
    telescope_system,
    unify,
)
from Rewriting.engine import joinable, normalize, step
from Rewriting.rules import RewriteRule, validate_trs
from Rewriting.trace import ReductionTrace, TraceStep, replay
from Stdlib.registry import stdlib_theory
from tests.conftest import nat_theory

NAT = nat_theory()
X = Var("x", Sort.tm(0))
N, ZERO = NAT.app("N"), NAT.app("z")


def succ(t):
    return NAT.app("s", t)


def forked():
    """f(x) reduces to either of two unrelated constants."""
    a, b = FunSymbol("a", (), Sort.tm(0)), FunSymbol("b", (), Sort.tm(0))
    f = FunSymbol("f", (Sort.tm(0),), Sort.tm(0))
    theory = NAT.extend(name="forked", funs=[a, b, f])
    rules = [
        RewriteRule("to_a", theory.app("f", X), theory.app("a")),
        RewriteRule("to_b", theory.app("f", X), theory.app("b")),
    ]
    return theory, validate_trs(rules, "forked")


def test_rules_are_validated():
    with pytest.raises(VariableLhs):
        validate_trs([RewriteRule("bad", X, ZERO)])
    with pytest.raises(EscapingVariable):
        validate_trs([RewriteRule("bad", ZERO, X)])
    trs = validate_trs([RewriteRule("collapse", succ(succ(X)), succ(X))], "collapse")
    assert trs.left_linear
    assert trs.rule("collapse").rhs == succ(X)
    with pytest.raises(KeyError):
        trs.rule("missing")


def test_left_linearity_of_the_stdlib_systems(t_pi, t_pi2):
    assert not directed_trs(t_pi, 2).left_linear
    assert directed_trs(t_pi2, 2).left_linear


def test_beta_normalizes_under_a_telescope(t_pi):
    trs = directed_trs(t_pi, 2)
    tel = stdlib_theory("t_pi").telescopes["fun_arg"]
    start = term(t_pi, "app(A, wk(A, A), lam(A, v0(A)), a)", tel)
    trace = normalize(trs, tel, start, 20)
    assert trace.end == tel.var("a")
    assert replay(trace, trs, tel) == trace.end
    assert [s.label for s in trace.steps][0] == "beta"


def test_leftmost_innermost_order():
    trs = validate_trs([RewriteRule("collapse", succ(succ(X)), succ(X))])
    successors = step(trs, None, succ(succ(succ(ZERO))))
    assert [s.position for _, s in successors] == [(1,), ()]
    assert normalize(trs, None, succ(succ(succ(ZERO))), 10).end == succ(ZERO)


def test_fuel_exhaustion_keeps_the_partial_trace():
    trs = validate_trs([RewriteRule("grow", succ(X), succ(succ(X)))])
    with pytest.raises(FuelExhausted) as info:
        normalize(trs, None, succ(ZERO), 3)
    assert len(info.value.trace) == 3
    assert info.value.trace.start == succ(ZERO)


def test_replay_rejects_a_forged_step():
    trs = validate_trs([RewriteRule("collapse", succ(succ(X)), succ(X))])
    forged = ReductionTrace(ZERO, (TraceStep((), rule="collapse"),), ZERO)
    with pytest.raises(KernelError):
        replay(forged, trs)


def test_telescope_steps_rewrite_boundaries():
    tel = Telescope.build(NAT, "on_n", [("x", N, None)])
    x = tel.var("x")
    successors = step(validate_trs([]), tel, NAT.app("ty0", x))
    assert successors == [(N, TraceStep((), telescope_index=1))]
    assert successors[0][1].label == "tel[1]"


def test_joinable_finds_the_shortest_meet():
    trs = validate_trs([RewriteRule("collapse", succ(succ(X)), succ(X))])
    outcome = joinable(trs, None, succ(succ(ZERO)), succ(succ(succ(ZERO))), 10, 50)
    assert outcome.joined
    assert outcome.witness.meet == succ(succ(ZERO))
    assert outcome.witness.length == 1
    assert outcome.witness.left_trace.end == outcome.witness.right_trace.end


def test_joinable_breaks_ties_by_term_order():
    """a reaches d through x in two steps; a and d also meet at m in two steps."""
    names = ("a", "d", "m", "x")
    theory = NAT.extend(name="detour", funs=[FunSymbol(n, (), Sort.tm(0)) for n in names])
    a, d, m, x = (theory.app(n) for n in names)
    trs = validate_trs(
        [
            RewriteRule("a_m", a, m),
            RewriteRule("d_m", d, m),
            RewriteRule("a_x", a, x),
            RewriteRule("x_d", x, d),
        ],
        "detour",
    )
    outcome = joinable(trs, None, a, d, 10, 50)
    assert outcome.witness.length == 2
    assert outcome.witness.meet == d
    assert len(outcome.witness.right_trace) == 0


def test_unjoinable_normal_forms_are_disjoint():
    theory, trs = forked()
    outcome = joinable(trs, None, theory.app("a"), theory.app("b"), 5, 20)
    assert not outcome.joined
    assert outcome.disjoint


def test_local_confluence_reports_counterexample_peaks():
    theory, trs = forked()
    report = check_local_confluence(trs, None, [theory.app("f", ZERO)], 5)
    assert report.verdict is Verdict.REFUTED
    assert report.counterexamples[0].source == theory.app("f", ZERO)

    drop = validate_trs([trs.rule("to_a"), RewriteRule("drop", succ(X), X)])
    report = check_local_confluence(drop, None, [theory.app("f", succ(ZERO))], 5)
    assert report.verdict is Verdict.CERTIFIED
    assert report.peaks_checked >= 1


def test_unify_has_an_occurs_check():
    assert unify(succ(X), succ(ZERO)) == {X: ZERO}
    assert unify(X, succ(X)) is None


def test_orthogonality_finds_nested_overlaps():
    theory, _ = forked()
    outer = validate_trs([RewriteRule("f_z", theory.app("f", ZERO), theory.app("a"))])
    inner = validate_trs([RewriteRule("z_a", ZERO, theory.app("a"))])
    ok, overlaps = check_orthogonal(outer, inner)
    assert not ok
    assert [(o.outer, o.position, o.inner) for o in overlaps] == [("f_z", (1,), "z_a")]
    assert check_orthogonal(outer, validate_trs([]))[0]


def test_overlaps_survive_primed_variable_names():
    theory = NAT.extend(name="primed", funs=[FunSymbol("q", (Sort.tm(0),), Sort.tm(0))])
    primed = Var("x'", Sort.tm(0))
    outer = validate_trs([RewriteRule("q_s", theory.app("q", succ(primed)), ZERO)])
    inner = validate_trs([RewriteRule("q_any", theory.app("q", X), ZERO)])
    ok, overlaps = check_orthogonal(outer, inner)
    assert not ok
    assert [(o.outer, o.position, o.inner) for o in overlaps] == [("q_any", (), "q_s"), ("q_s", (), "q_any")]

    renamed = rename_apart(theory.app("q", X), {primed})
    assert renamed == theory.app("q", Var("x''", Sort.tm(0)))


def test_telescope_system_freezes_variables():
    tel = Telescope.build(NAT, "on_n", [("x", N, None)])
    system = telescope_system(tel)
    assert [r.name for r in system.rules] == ["tel[1]"]
    frozen = system.rules[0].lhs.args[0]
    assert isinstance(frozen, App) and frozen.symbol.name == "#x"
    assert system.name == "phi_on_n"


def test_union_hypotheses():
    tel = Telescope.build(NAT, "on_n", [("x", N, None)])
    good = validate_trs([RewriteRule("s_ty", NAT.app("ty0", succ(X)), N)], "good")
    assert check_morita_conf_hypotheses(good, tel).holds

    bad = validate_trs([RewriteRule("any_ty", NAT.app("ty0", X), N)], "bad")
    report = check_morita_conf_hypotheses(bad, tel)
    assert not report.holds
    assert report.offending == ("any_ty",)
    assert not report.orthogonal


def test_empty_telescope_adds_no_steps():
    trs = validate_trs([])
    assert step(trs, EMPTY_TELESCOPE, succ(ZERO)) == []
    assert len(telescope_system(EMPTY_TELESCOPE)) == 0


@pytest.mark.slow
def test_beta_system_is_locally_confluent_on_small_terms(t_pi1):
    trs = directed_trs(t_pi1, 2)
    tel = stdlib_theory("t_pi1").telescopes["body_arg"]
    seed = term(t_pi1, "app(A, B, lam(A, b), a)", tel)
    assert check_local_confluence(trs, tel, [seed], 10).verdict is not Verdict.REFUTED


def test_linear_beta_meets_the_union_hypotheses(t_pi, t_pi2):
    tel = stdlib_theory("t_pi2").telescopes["fun_arg"]
    linear = check_morita_conf_hypotheses(stdlib_theory("t_pi2").metadata.trs, tel, t_pi2)
    assert linear.holds
    assert linear.overlaps == ()

    repeated = check_morita_conf_hypotheses(stdlib_theory("t_pi").metadata.trs, tel, t_pi)
    assert not repeated.left_linear
    assert repeated.orthogonal
