import pytest

from Core.Base.artifact import NamedArtifact
from Core.Utils.exception import NotImplementedArtifact, UnknownName
from Core.Utils.helper import Helper
from Kernel.morphism import TheoryMorphism, apply_morphism, compose_morphisms
from Kernel.sort import Sort
from Kernel.term import Var
from Kernel.theory import validate_theory
from Stdlib.certificates import DERIVED_SYMBOLS, DIRECTED_RULES
from Stdlib.registry import MORPHISM_NAMES, THEORY_NAMES, artifact_names, stdlib_artifact, stdlib_morphism, stdlib_theory

PLACEHOLDERS = ("interval", "extensionality")
BUILT = [name for name in THEORY_NAMES if name not in PLACEHOLDERS]


def test_registry_lists_every_artifact():
    names = artifact_names()
    assert names == sorted(names)
    assert {"t_pi", "unit", "contr_to_unit", "pi_iso_inv"} <= set(names)
    assert len(names) == len(THEORY_NAMES) + len(MORPHISM_NAMES)


def test_unknown_names():
    with pytest.raises(UnknownName):
        stdlib_theory("pi_incl")
    with pytest.raises(UnknownName):
        stdlib_morphism("t_pi")
    with pytest.raises(UnknownName):
        stdlib_artifact("nowhere")


@pytest.mark.parametrize("name", PLACEHOLDERS)
def test_placeholders_are_registered_but_not_built(name):
    assert name in artifact_names()
    with pytest.raises(NotImplementedArtifact):
        stdlib_theory(name)


@pytest.mark.parametrize("name", BUILT)
def test_golden_theories_are_well_formed(name):
    artifact = stdlib_theory(name)
    assert isinstance(artifact, NamedArtifact)
    assert artifact.payload.name == name
    assert validate_theory(artifact.payload).valid


def test_golden_files_are_packaged():
    files = Helper.stdlib_files()
    assert "stdlib/t_pi.th" in files
    assert "stdlib/contr_unit.th" in files
    assert all(f.endswith(".th") for f in files)


def test_artifacts_are_cached():
    assert stdlib_theory("unit") is stdlib_theory("unit")
    assert stdlib_theory("unit", 2) is not stdlib_theory("unit", 3)
    assert "ty2" in stdlib_theory("unit", 3).payload.funs
    assert "ty2" not in stdlib_theory("unit", 2).payload.funs


def test_imports_carry_the_imported_axioms():
    rt = stdlib_theory("refl_transport").payload
    id_full = stdlib_theory("id_full").payload
    assert set(id_full.axiom_map) <= set(rt.axiom_map)
    contractible = stdlib_theory("contractible").payload
    assert {"C", "c0", "eq"} <= set(contractible.funs)
    assert set(rt.funs) <= set(contractible.funs)


def test_unit_metadata():
    meta = stdlib_theory("unit").metadata
    assert set(meta.to_dict()) == {"separation", "well_defined"}
    assert meta.trs is None
    assert set(meta.well_defined.rank) == {"top", "unit"}


def test_pi_metadata():
    meta = stdlib_theory("t_pi").metadata
    assert set(meta.to_dict()) == {"separation", "well_defined", "trs"}
    assert [r.name for r in meta.trs.rules] == list(DIRECTED_RULES["t_pi"])
    assert meta.to_dict()["trs"]["name"] == "t_pi_directed"


def test_contractible_has_no_well_definedness_certificate():
    meta = stdlib_theory("contractible").metadata
    assert meta.well_defined is None


def test_contractible_witness_lifts_to_the_centre():
    artifact = stdlib_morphism("contr_to_unit")
    f = artifact.payload
    assert (f.source.name, f.target.name) == ("contractible", "refl_transport_unit")
    witness = artifact.metadata.witness
    assert witness.entries["top"].term == f.source.app("C")
    assert witness.entries["unit"].term == f.source.app("c0")
    assert tuple(witness.derived) == DERIVED_SYMBOLS
    assert set(artifact.metadata.to_dict()) == {"witness"}


def test_centre_maps_to_unit():
    f = stdlib_morphism("contr_to_unit").payload
    c = Var("c", Sort.tm(0))
    assert apply_morphism(f, f.source.app("c0")) == f.target.app("unit")
    assert apply_morphism(f, f.source.app("eq", c)) == f.target.app("refl", f.target.app("unit"))


def test_pi_comparisons_compose_to_the_identity():
    iso = stdlib_morphism("pi_iso").payload
    inv = stdlib_morphism("pi_iso_inv").payload
    assert isinstance(iso, TheoryMorphism)
    assert (inv.source.name, inv.target.name) == ("t_pi2", "t_pi")
    round_trip = compose_morphisms(inv, iso)
    A, b = Var("A", Sort.ty(0)), Var("b", Sort.tm(1))
    lam = iso.source.app("lam", A, b)
    assert apply_morphism(round_trip, lam) == lam
    assert stdlib_morphism("pi_incl").metadata.witness is None
