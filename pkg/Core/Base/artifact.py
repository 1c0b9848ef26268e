from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, Mapping, Optional, Union

from Core.Utils.logger import Logger
from Kernel.morphism import TheoryMorphism
from Kernel.theory import Theory

logger = Logger.get_logger()


@dataclass(frozen=True)
class ArtifactMetadata:
    """Certificates shipped with an artifact; each one is optional."""

    separation: Optional[object] = None
    well_defined: Optional[object] = None
    trs: Optional[object] = None
    witness: Optional[object] = None

    def to_dict(self) -> Dict:
        return {
            key: value.to_dict()
            for key, value in (
                ("separation", self.separation),
                ("well_defined", self.well_defined),
                ("trs", self.trs),
                ("witness", self.witness),
            )
            if value is not None
        }


@dataclass(frozen=True, eq=False)
class NamedArtifact:
    """A stdlib theory or morphism; metadata is computed on first access."""

    name: str
    payload: Union[Theory, TheoryMorphism]
    telescopes: Mapping[str, object] = field(default_factory=dict)
    loader: Callable[[], ArtifactMetadata] = field(default=ArtifactMetadata, repr=False)

    @cached_property
    def metadata(self) -> ArtifactMetadata:
        return self.loader()


class BaseArtifact(ABC):
    registry: Dict[str, "BaseArtifact"] = {}
    _instances: Dict[str, "BaseArtifact"] = {}

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        if hasattr(cls, "artifact_name"):
            BaseArtifact.registry[cls.artifact_name] = cls
            logger.debug("📌 Registered stdlib artifact: %s", cls.artifact_name)

    def __new__(cls, *args, **kwargs):
        if hasattr(cls, "artifact_name"):
            if cls.artifact_name not in cls._instances:
                logger.debug("🆕 Creating artifact loader: %s", cls.artifact_name)
                cls._instances[cls.artifact_name] = super().__new__(cls)
            return cls._instances[cls.artifact_name]
        return super().__new__(cls)

    @abstractmethod
    def build(self, max_level: int) -> NamedArtifact:
        """Construct the artifact with base symbols up to max_level."""
        pass
