import argparse
from abc import ABC, abstractmethod
from typing import Dict

from Core.Utils.logger import Logger

logger = Logger.get_logger()


class BaseCommand(ABC):
    registry: Dict[str, "BaseCommand"] = {}
    _instances: Dict[str, "BaseCommand"] = {}

    help: str = ""

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        if hasattr(cls, "command_type"):
            BaseCommand.registry[cls.command_type] = cls
            logger.debug("📌 Registered command: %s", cls.command_type)

    def __new__(cls, *args, **kwargs):
        if hasattr(cls, "command_type"):
            if cls.command_type not in cls._instances:
                cls._instances[cls.command_type] = super().__new__(cls)
            return cls._instances[cls.command_type]
        return super().__new__(cls)

    @abstractmethod
    def configure(self, parser: argparse.ArgumentParser) -> None:
        """Add the sub-command's arguments."""
        pass

    @abstractmethod
    def run(self, args: argparse.Namespace):
        """Execute the sub-command and return its Report."""
        pass
