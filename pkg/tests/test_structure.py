import pytest

from Commands.common import term
from Core.Enums.kernel import ConfluenceVerdict, Verdict
from Core.Utils.exception import CyclicOrder, MissingSymbol, NotSeparated, UndirectedAxiom
from Deduction.derivation import check_derivation
from Deduction.prover import freshen, prove
from Deduction.saturation import atom_key, saturate
from Kernel.formula import TOP, Defined, Eq, Sequent, canonicalize, map_atom
from Kernel.sort import Sort
from Kernel.symbol import FunSymbol
from Kernel.term import App, Var
from Kernel.theory import Axiom
from Morita.telescope import EMPTY_TELESCOPE, enumerate_telescopes
from Rewriting.rules import RewriteRule, validate_trs
from Stdlib.base import base_theory
from Stdlib.certificates import DIRECTED_RULES
from Stdlib.registry import stdlib_theory
from Structure.confluence import certify_confluent, check_defined
from Structure.directed import extract_directed, sampled_steps, validate_reduction_system
from Structure.separation import classify_separated, minimal_maximal
from Structure.welldefined import DefiningTerm, WellDefinedCert, check_well_defined


def constants(*names, axioms=()):
    """base_theory(2) with defined tm 0 constants and extra axioms."""
    funs = [FunSymbol(n, (), Sort.tm(0)) for n in names]
    defined = [Axiom(f"{n}_def", Sequent((), TOP, (Defined(App(f, ())),))) for n, f in zip(names, funs)]
    return base_theory(2).extend(name="consts", funs=funs, axioms=defined + list(axioms))


def test_pi_axioms_are_separated(t_pi):
    cert = classify_separated(t_pi, 1)
    assert {"Pi", "lam", "app", "subst1", "subty1"} <= set(cert.a_d)
    assert cert.a_d["app"].axiom == "app_def"
    assert {"Pi_inv", "lam_inv", "app_inv", "subst1_inv", "subty1_inv"} == set(cert.a_d_prime)
    assert set(cert.a_e) == set(DIRECTED_RULES["t_pi"])
    parts = set(cert.a_d_names) | set(cert.a_d_prime) | set(cert.a_e)
    assert parts == set(t_pi.axiom_map)


def test_base_theory_has_one_equation(base):
    cert = classify_separated(base, 1)
    assert cert.a_d_prime == ()
    assert cert.a_e == ("ft0_emp",)
    assert cert.condition3.verdict is Verdict.CERTIFIED


def test_two_definedness_axioms_are_rejected():
    c = FunSymbol("c", (), Sort.tm(0))
    twice = Axiom("c_again", Sequent((), TOP, (Defined(App(c, ())),)))
    theory = constants("c", axioms=[twice])
    with pytest.raises(NotSeparated) as info:
        classify_separated(theory, 1)
    assert info.value.axiom == "c_again"


def test_a_symbol_without_definedness_is_not_separated():
    theory = base_theory(2).extend(name="bare", funs=[FunSymbol("c", (), Sort.tm(0))])
    assert classify_separated(theory, 1) is None


def test_minimal_maximal_is_stable(t_pi):
    cert = classify_separated(t_pi, 1)
    minimal, maximal = minimal_maximal(cert, t_pi)
    assert "app_inv" not in minimal.axiom_map
    assert {"app_inv", "wk_inv"} <= set(maximal.axiom_map)
    again = classify_separated(maximal, 1)
    assert again.a_d_names == cert.a_d_names
    assert set(again.a_e) == set(cert.a_e)
    assert set(minimal_maximal(again, maximal)[0].axiom_map) == set(minimal.axiom_map)

    base_cert = classify_separated(minimal, 1)
    assert minimal_maximal(base_cert, minimal)[0] is minimal


def test_stored_rules_match_the_directed_axioms(t_pi):
    stored = stdlib_theory("t_pi").metadata.trs
    extracted = extract_directed(t_pi, classify_separated(t_pi, 1))
    assert {r.name: (r.lhs, r.rhs) for r in stored.rules} == {r.name: (r.lhs, r.rhs) for r in extracted.rules}
    assert extracted.name == "t_pi_directed"


def test_variable_left_hand_sides_are_undirected():
    unit = stdlib_theory("unit").payload
    with pytest.raises(UndirectedAxiom) as info:
        extract_directed(unit, classify_separated(unit, 1))
    assert (info.value.axiom, info.value.reason) == ("unit_eta", "variable-lhs")


def test_reduction_system_on_the_base_theory(base):
    trs = extract_directed(base, classify_separated(base, 1))
    report = validate_reduction_system(base, trs, [EMPTY_TELESCOPE], samples=20, depth=2, fuel=10)
    assert [c.condition for c in report.conditions] == [1, 2, 3]
    assert report.verdict is Verdict.CERTIFIED


def test_an_unsound_rule_fails_condition_two():
    theory = constants("c", "d")
    unsound = validate_trs([RewriteRule("c_d", theory.app("c"), theory.app("d"))], "unsound")
    report = validate_reduction_system(theory, unsound, [EMPTY_TELESCOPE], samples=20, depth=2, fuel=10)
    second = report.conditions[1]
    assert second.verdict is not Verdict.CERTIFIED
    assert any("c_d" in f for f in second.failures)


def test_confluence_of_the_base_theory(base):
    trs = extract_directed(base, classify_separated(base, 1))
    report = certify_confluent(base, trs, EMPTY_TELESCOPE, 2, 10)
    assert report.verdict is ConfluenceVerdict.CERTIFIED_AT_BOUND
    assert report.counterexamples == ()


def test_distinct_normal_forms_of_one_term_are_a_counterexample():
    theory = constants("a", "b", "c")
    a_def = (Defined(theory.app("a")),)
    theory = theory.extend(axioms=[
        Axiom("a_b", Sequent((), a_def, (Eq(theory.app("a"), theory.app("b")),))),
        Axiom("a_c", Sequent((), a_def, (Eq(theory.app("a"), theory.app("c")),))),
    ])
    trs = validate_trs([
        RewriteRule("a_b", theory.app("a"), theory.app("b")),
        RewriteRule("a_c", theory.app("a"), theory.app("c")),
    ])
    report = certify_confluent(theory, trs, EMPTY_TELESCOPE, 2, 10)
    assert report.verdict is ConfluenceVerdict.COUNTEREXAMPLE
    pairs = {(str(c.left), str(c.right)) for c in report.counterexamples}
    assert ("b", "c") in pairs or ("c", "b") in pairs


def test_unit_symbols_are_well_defined():
    artifact = stdlib_theory("unit")
    report = check_well_defined(artifact.payload, artifact.metadata.well_defined, 2)
    assert report.verdict is Verdict.CERTIFIED
    assert [s.symbol for s in report.symbols] == ["top", "unit"]


def test_symbol_order_must_be_acyclic(t_pi):
    stored = stdlib_theory("t_pi").metadata.well_defined
    A, b = Var("A", Sort.ty(0)), Var("b", Sort.tm(1))
    looping = dict(stored.defining_terms)
    looping["Pi"] = (DefiningTerm(0, t_pi.app("emp")), DefiningTerm(0, t_pi.app("lam", A, b)))
    with pytest.raises(CyclicOrder):
        check_well_defined(t_pi, WellDefinedCert(stored.rank, looping), 2)


def test_every_symbol_needs_defining_terms(t_pi):
    stored = stdlib_theory("t_pi").metadata.well_defined
    with pytest.raises(MissingSymbol):
        check_well_defined(t_pi, WellDefinedCert(stored.rank), 2)


def test_recursive_definedness_by_joinability(t_pi):
    artifact = stdlib_theory("t_pi")
    tel = artifact.telescopes["body_arg"]
    trs = artifact.metadata.trs
    wd = artifact.metadata.well_defined
    assert check_defined(t_pi, wd, trs, tel, tel.var("a"), 10) is Verdict.CERTIFIED
    redex = term(t_pi, "app(A, B, lam(A, b), a)", tel)
    assert check_defined(t_pi, wd, trs, tel, redex, 20) is Verdict.CERTIFIED


@pytest.mark.slow
def test_pi_symbols_are_well_defined_at_depth_four(t_pi):
    report = check_well_defined(t_pi, stdlib_theory("t_pi").metadata.well_defined, 4)
    assert report.verdict is Verdict.CERTIFIED


@pytest.mark.slow
def test_guarded_beta_is_confluent_at_bound(t_pi1):
    artifact = stdlib_theory("t_pi1")
    report = certify_confluent(t_pi1, artifact.metadata.trs, artifact.telescopes["body_arg"], 3, 50)
    assert report.verdict is not ConfluenceVerdict.COUNTEREXAMPLE


def pi1_telescopes(t_pi1, count):
    declared = list(stdlib_theory("t_pi1").telescopes.values())
    return (declared + enumerate_telescopes(t_pi1, 2, 1, limit=count))[:count]


@pytest.mark.slow
def test_guarded_beta_steps_are_derivable(t_pi1):
    trs = stdlib_theory("t_pi1").metadata.trs
    checked = 0
    for tel in pi1_telescopes(t_pi1, 10):
        for t, s, how in sampled_steps(t_pi1, trs, tel, 50, 2, 20):
            goal = tel.sequent((Eq(t, s),))
            outcome = prove(t_pi1, goal, 3, 20)
            assert outcome.certified, f"{tel.name}: {t} => {s} ({how.label})"
            proved = check_derivation(t_pi1, outcome.derivations[0])
            assert proved.var_ctx == goal.var_ctx
            assert canonicalize(proved.rhs[0]) == canonicalize(Eq(t, s))
            checked += 1
    assert checked > 0


@pytest.mark.slow
def test_maximal_facts_follow_from_the_separated_axioms(t_pi1):
    cert = classify_separated(t_pi1, 1)
    minimal, maximal = minimal_maximal(cert, t_pi1)
    assert set(minimal.axiom_map) == set(cert.a_d_names) | set(cert.a_e)
    sampled = 0
    for tel in pi1_telescopes(t_pi1, 5):
        fresh = freshen(maximal, tel.sequent(TOP))
        facts = sorted(saturate(fresh.theory, 2, 20), key=atom_key)
        sample = tuple(map_atom(a, fresh.restore) for a in facts[:: max(1, len(facts) // 10)][:10])
        outcome = prove(minimal, tel.sequent(sample), 4, 20)
        assert outcome.certified, f"{tel.name}: {[str(a) for a in outcome.missing]}"
        sampled += len(sample)
    assert sampled > 0
