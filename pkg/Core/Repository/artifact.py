from typing import Optional

from Core.Factory.artifact import ArtifactFactory
from Core.Utils.helper import Helper


class ArtifactRepository:
    def __init__(self, name: str, max_level: Optional[int] = None):
        self.max_level = Helper.get_settings().max_level if max_level is None else max_level
        self.obj = ArtifactFactory.get_artifact(name)

    def build(self):
        return self.obj.build(self.max_level)
