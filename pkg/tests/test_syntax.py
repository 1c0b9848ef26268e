import pytest

from Core.Utils.exception import ArityMismatch, DuplicateName, OutOfOrderReference, TheorySyntaxError, UnknownName
from Core.Utils.helper import Helper
from Kernel.formula import Defined, Eq
from Kernel.morphism import apply_morphism
from Stdlib.registry import stdlib_theory
from Syntax.ast import AppNode, NameRef, TheoryFile
from Syntax.elaborator import elaborate
from Syntax.parser import parse_term, parse_theory_file
from Syntax.printer import morphism_block, print_theory_file, theory_block

POINTS = """
-- two constants and a map that sends d to e
theory src {
  pragma max_level 2 ;
  fun c : -> tm 0 ;
  fun d : -> tm 0 ;
  axiom c_def [] : true |- c def ;
  axiom d_def [] : true |- d def ;
}

theory tgt {
  pragma max_level 2 ;
  fun c : -> tm 0 ;
  fun e : -> tm 0 ;
  fun ext : ctx 0 * tm 0 -> tm 0 context 0 ;
  axiom c_def [] : true |- c def ;
  axiom e_def [] : true |- e def ;
  axiom e_ty [] : true |- ty0(e) = ty0(c) ;
  telescope pair = [A := emp; x : tm := A] ;
}

morphism m : src -> tgt {
  fun d() |-> e ;
}
"""


def load(text):
    return elaborate(parse_theory_file(text))


def test_terms_parse_to_nodes():
    assert parse_term("app(A, B, f, a)") == AppNode("app", tuple(NameRef(n) for n in "ABfa"))
    assert parse_term("emp") == NameRef("emp")


def test_theory_blocks_elaborate():
    ws = load(POINTS)
    tgt = ws.theory("tgt")
    assert ws.declared == ["src", "tgt"]
    assert ws.theory() is tgt
    assert "ty1" in tgt.funs and "ty2" not in tgt.funs
    assert tgt.fun("ext").context_position == 0
    assert tgt.axiom("e_ty").sequent.rhs == (Eq(tgt.app("ty0", tgt.app("e")), tgt.app("ty0", tgt.app("c"))),)
    assert tgt.axiom("c_def").sequent.rhs == (Defined(tgt.app("c")),)


def test_telescope_entry_kinds():
    ws = load(POINTS)
    _, tel = ws.telescope("pair")
    assert [str(v.sort) for v in tel.variables] == ["ty 0", "tm 0"]
    with pytest.raises(UnknownName):
        ws.telescope("missing")


def test_unlisted_symbols_map_to_their_namesakes():
    ws = load(POINTS)
    m = ws.morphism("m")
    src, tgt = ws.theory("src"), ws.theory("tgt")
    assert apply_morphism(m, src.app("d")) == tgt.app("e")
    assert apply_morphism(m, src.app("c")) == tgt.app("c")


def test_bytes_are_accepted():
    assert parse_theory_file(POINTS.encode("utf-8")) == parse_theory_file(POINTS)


def test_missing_semicolon_is_positioned():
    with pytest.raises(TheorySyntaxError) as info:
        parse_theory_file("theory t {\n  fun c : -> tm 0\n}\n")
    assert info.value.line == 3
    assert info.value.column >= 1
    assert "line 3" in info.value.message


def test_unexpected_end_of_input():
    with pytest.raises(TheorySyntaxError) as info:
        parse_theory_file("theory t {")
    assert info.value.line == 1


def test_telescopes_bind_in_order():
    text = "theory t {\n  telescope bad = [B : ty := A; A := emp] ;\n}\n"
    with pytest.raises(OutOfOrderReference) as info:
        load(text)
    assert info.value.index == 1


def test_duplicate_declarations():
    with pytest.raises(DuplicateName):
        load("theory t { }\ntheory t { }\n")
    with pytest.raises(DuplicateName):
        load(POINTS + "\nmorphism m : src -> tgt { }\n")
    twice = POINTS.replace("fun d() |-> e ;", "fun d() |-> e ;\n  fun d() |-> c ;")
    with pytest.raises(DuplicateName):
        load(twice)


def test_morphism_images_respect_arity():
    with pytest.raises(ArityMismatch):
        load(POINTS.replace("fun d() |-> e ;", "fun d(x) |-> e ;"))


def test_unknown_stdlib_import():
    with pytest.raises(UnknownName):
        load("import stdlib.nowhere ;\n")


def test_canonical_printing_is_a_fixed_point():
    tf = parse_theory_file(Helper.read_text("stdlib/t_pi.th"))
    text = print_theory_file(tf)
    assert parse_theory_file(text) == tf
    assert print_theory_file(parse_theory_file(text)) == text


def test_printed_theories_elaborate_back(t_pi):
    artifact = stdlib_theory("t_pi")
    block = theory_block(t_pi, telescopes=artifact.telescopes.values())
    ws = load(print_theory_file(TheoryFile((block,))))
    again = ws.theory("t_pi")
    assert {f.name: f for f in again.own_funs} == {f.name: f for f in t_pi.own_funs}
    assert {a.name: a.sequent for a in again.own_axioms} == {a.name: a.sequent for a in t_pi.own_axioms}
    assert set(ws.telescopes["t_pi"]) == set(artifact.telescopes)


def test_morphism_blocks_print_their_maps():
    ws = load(POINTS)
    block = morphism_block(ws.morphism("m"))
    assert (block.source, block.target) == ("src", "tgt")
    assert [item.name for item in block.items] == ["d"]
