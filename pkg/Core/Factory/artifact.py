from Core.Base.artifact import BaseArtifact
from Core.Utils.exception import UnknownName
from Core.Utils.logger import Logger

# Import the artifact definitions so they register in BaseArtifact
import Stdlib.artifacts  # noqa: F401

logger = Logger.get_logger()


class ArtifactFactory:
    @staticmethod
    def get_artifact(name: str) -> BaseArtifact:
        logger.debug("🔎 Resolving stdlib artifact: %s", name)
        _class = BaseArtifact.registry.get(name)

        if not _class:
            logger.error("❌ Unknown stdlib artifact: %s", name)
            raise UnknownName(f"Unknown stdlib artifact '{name}'")

        logger.debug("✅ Stdlib artifact %s resolved.", _class.__name__)
        return _class()
