from enum import Enum


class SortKind(Enum):
    CTX = "ctx"
    TM = "tm"


class EntryKind(Enum):
    """Kind p of a telescope variable; its boundary is ty(x) or ft(x)."""
    TM = "tm"
    TY = "ty"


class RuleName(Enum):
    NV = "nv"
    NS = "ns"
    NH = "nh"
    NL = "nl"
    NP = "np"
    NF = "nf"
    NA = "na"
    NE1 = "ne1"
    NE2 = "ne2"


class Verdict(Enum):
    CERTIFIED = "certified"
    REFUTED = "refuted"
    INCONCLUSIVE = "inconclusive"


class ObligationStatus(Enum):
    CERTIFIED = "certified"
    ASSUMED = "assumed"
    REFUTED = "refuted"


class ConfluenceVerdict(Enum):
    CERTIFIED_AT_BOUND = "certified-at-bound"
    COUNTEREXAMPLE = "counterexample"
    INCONCLUSIVE = "inconclusive"


class ReportVerdict(Enum):
    OK = "ok"
    REFUTED = "refuted"
    INCONCLUSIVE = "inconclusive"
    ERROR = "error"
