from Core.Base.command import BaseCommand
from Core.Utils.exception import UnknownCommand
from Core.Utils.logger import Logger

# Import the sub-commands so they register in BaseCommand
import Commands.theory  # noqa: F401
import Commands.proof  # noqa: F401
import Commands.rewriting  # noqa: F401
import Commands.structure  # noqa: F401
import Commands.morita  # noqa: F401
import Commands.colimit  # noqa: F401

logger = Logger.get_logger()


class CommandFactory:
    @staticmethod
    def get_command(command_type: str) -> BaseCommand:
        logger.debug("🔎 Resolving command: %s", command_type)
        _class = BaseCommand.registry.get(command_type)

        if not _class:
            logger.error("❌ Unsupported command: %s", command_type)
            raise UnknownCommand(f"Unsupported command: {command_type}")

        logger.debug("✅ Command %s resolved.", _class.__name__)
        return _class()

    @staticmethod
    def commands():
        return dict(sorted(BaseCommand.registry.items()))
