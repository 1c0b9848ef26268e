from typing import Mapping, Optional, Tuple

from Core.Base.artifact import ArtifactMetadata, BaseArtifact, NamedArtifact
from Core.Enums.stdlib import StdlibMorphism, StdlibTheory
from Core.Utils.exception import NotImplementedArtifact
from Core.Utils.helper import Helper
from Core.Utils.logger import Logger
from Kernel.morphism import TheoryMorphism
from Kernel.theory import Theory
from Morita.lifting import Cond1Witness
from Stdlib.base import base_theory
from Stdlib.certificates import (
    COMBINATORY_TABLE,
    DIRECTED_RULES,
    ID_TABLE,
    PI_TABLE,
    REFL_TRANSPORT_TABLE,
    UNIT_TABLE,
    Row,
    contr_to_unit_witness,
    directed_rules,
    well_defined_cert,
)
from Structure.separation import classify_separated
from Syntax.elaborator import Workspace, elaborate
from Syntax.parser import parse_theory_file

logger = Logger.get_logger()

SEPARATION_BOUND = 2


def load_workspace(file_name: str, max_level: int) -> Workspace:
    text = Helper.read_text(f"stdlib/{file_name}")
    return elaborate(parse_theory_file(text), max_level=max_level)


class BaseTheoryArtifact(BaseArtifact):
    artifact_name = StdlibTheory.BASE.value

    def build(self, max_level: int) -> NamedArtifact:
        theory = base_theory(max_level)
        return NamedArtifact(
            self.artifact_name,
            theory,
            loader=lambda: ArtifactMetadata(separation=classify_separated(theory, SEPARATION_BOUND)),
        )


class TheoryFileArtifact(BaseArtifact):
    """A theory read from `<name>.th`, with its stored certificates."""

    table: Optional[Mapping[str, Row]] = None

    def build(self, max_level: int) -> NamedArtifact:
        ws = load_workspace(f"{self.artifact_name}.th", max_level)
        theory = ws.theory(self.artifact_name)
        logger.debug("📚 Loaded stdlib theory '%s' at level %d", self.artifact_name, max_level)
        return NamedArtifact(
            self.artifact_name,
            theory,
            dict(ws.telescopes.get(self.artifact_name, {})),
            lambda: self.metadata(theory),
        )

    def metadata(self, theory: Theory) -> ArtifactMetadata:
        rules: Tuple[str, ...] = DIRECTED_RULES.get(self.artifact_name, ())
        return ArtifactMetadata(
            separation=classify_separated(theory, SEPARATION_BOUND),
            well_defined=well_defined_cert(theory, self.table) if self.table else None,
            trs=directed_rules(theory, rules) if rules else None,
        )


class Id0Artifact(TheoryFileArtifact):
    artifact_name = StdlibTheory.ID0.value


class IdFullArtifact(TheoryFileArtifact):
    artifact_name = StdlibTheory.ID_FULL.value
    table = ID_TABLE


class ReflTransportArtifact(TheoryFileArtifact):
    artifact_name = StdlibTheory.REFL_TRANSPORT.value
    table = REFL_TRANSPORT_TABLE


class PiArtifact(TheoryFileArtifact):
    artifact_name = StdlibTheory.T_PI.value
    table = PI_TABLE


class Pi1Artifact(TheoryFileArtifact):
    artifact_name = StdlibTheory.T_PI1.value
    table = PI_TABLE


class Pi2Artifact(TheoryFileArtifact):
    artifact_name = StdlibTheory.T_PI2.value
    table = PI_TABLE


class Pi3Artifact(TheoryFileArtifact):
    artifact_name = StdlibTheory.T_PI3.value
    table = PI_TABLE


class ContractibleArtifact(TheoryFileArtifact):
    # eq(c) def does not give back ty(c) = C, so eq has no defining terms
    artifact_name = StdlibTheory.CONTRACTIBLE.value


class UnitArtifact(TheoryFileArtifact):
    artifact_name = StdlibTheory.UNIT.value
    table = UNIT_TABLE


class CombinatoryArtifact(TheoryFileArtifact):
    artifact_name = StdlibTheory.COMBINATORY.value
    table = COMBINATORY_TABLE


class IntervalArtifact(BaseArtifact):
    artifact_name = StdlibTheory.INTERVAL.value

    def build(self, max_level: int) -> NamedArtifact:
        raise NotImplementedArtifact("The interval theory (coe, Path, wUA) has no construction here")


class ExtensionalityArtifact(BaseArtifact):
    artifact_name = StdlibTheory.EXTENSIONALITY.value

    def build(self, max_level: int) -> NamedArtifact:
        raise NotImplementedArtifact("The extensionality example depends on the interval theory")


class MorphismFileArtifact(BaseArtifact):
    """A morphism read from a golden file shared by several morphisms."""

    file_name: str = ""

    def build(self, max_level: int) -> NamedArtifact:
        ws = load_workspace(self.file_name, max_level)
        f = ws.morphism(self.artifact_name)
        logger.debug("📚 Loaded stdlib morphism '%s' from %s", self.artifact_name, self.file_name)
        return NamedArtifact(self.artifact_name, f, loader=lambda: ArtifactMetadata(witness=self.witness(f)))

    def witness(self, f: TheoryMorphism) -> Optional[Cond1Witness]:
        return None


class PiInclusion(MorphismFileArtifact):
    artifact_name = StdlibMorphism.PI_INCL.value
    file_name = "pi.th"


class Pi2Inclusion(MorphismFileArtifact):
    artifact_name = StdlibMorphism.PI2_INCL.value
    file_name = "pi.th"


class PiIsomorphism(MorphismFileArtifact):
    artifact_name = StdlibMorphism.PI_ISO.value
    file_name = "pi.th"


class PiIsomorphismInverse(MorphismFileArtifact):
    artifact_name = StdlibMorphism.PI_ISO_INV.value
    file_name = "pi.th"


class ContractibleToUnit(MorphismFileArtifact):
    artifact_name = StdlibMorphism.CONTR_TO_UNIT.value
    file_name = "contr_unit.th"

    def witness(self, f: TheoryMorphism) -> Optional[Cond1Witness]:
        return contr_to_unit_witness(f.source, f.target)
