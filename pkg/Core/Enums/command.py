from enum import Enum


class CommandType(Enum):
    CHECK = "check"
    PROVE = "prove"
    NORMALIZE = "normalize"
    CONFLUENCE = "confluence"
    SEPARATED = "separated"
    MORITA = "morita"
    COLIMIT = "colimit"
    PRINT = "print"
    STDLIB = "stdlib"


class OutputFormat(Enum):
    JSON = "json"
    TEXT = "text"


class MoritaMode(Enum):
    EXT = "ext"
    COND1 = "cond1"
    TYPE_LIFT = "type-lift"
    INSTANCE = "instance"


class ExitCode(Enum):
    OK = 0
    REFUTED = 1
    ERROR = 2
