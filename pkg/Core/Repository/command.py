from Core.Factory.command import CommandFactory


class CommandRepository:
    def __init__(self, command_type: str):
        self.command_type = command_type
        self.obj = CommandFactory.get_command(command_type)
