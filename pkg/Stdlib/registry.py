from functools import lru_cache
from typing import List, Optional

from Core.Base.artifact import NamedArtifact
from Core.Enums.stdlib import StdlibMorphism, StdlibTheory
from Core.Repository.artifact import ArtifactRepository
from Core.Utils.exception import UnknownName
from Core.Utils.helper import Helper

THEORY_NAMES = tuple(t.value for t in StdlibTheory)
MORPHISM_NAMES = tuple(m.value for m in StdlibMorphism)


@lru_cache(maxsize=64)
def _build(name: str, max_level: int) -> NamedArtifact:
    return ArtifactRepository(name, max_level).build()


def _level(max_level: Optional[int]) -> int:
    return Helper.get_settings().max_level if max_level is None else max_level


def stdlib_theory(name: str, max_level: Optional[int] = None) -> NamedArtifact:
    if name not in THEORY_NAMES:
        raise UnknownName(f"Unknown stdlib theory '{name}'")
    return _build(name, _level(max_level))


def stdlib_morphism(name: str, max_level: Optional[int] = None) -> NamedArtifact:
    if name not in MORPHISM_NAMES:
        raise UnknownName(f"Unknown stdlib morphism '{name}'")
    return _build(name, _level(max_level))


def stdlib_artifact(name: str, max_level: Optional[int] = None) -> NamedArtifact:
    if name in MORPHISM_NAMES:
        return stdlib_morphism(name, max_level)
    return stdlib_theory(name, max_level)


def artifact_names() -> List[str]:
    return sorted(THEORY_NAMES + MORPHISM_NAMES)
