from enum import Enum


class StdlibTheory(Enum):
    BASE = "base"
    ID0 = "id0"
    ID_FULL = "id_full"
    REFL_TRANSPORT = "refl_transport"
    T_PI = "t_pi"
    T_PI1 = "t_pi1"
    T_PI2 = "t_pi2"
    T_PI3 = "t_pi3"
    CONTRACTIBLE = "contractible"
    UNIT = "unit"
    COMBINATORY = "combinatory"
    INTERVAL = "interval"
    EXTENSIONALITY = "extensionality"


class StdlibMorphism(Enum):
    PI_INCL = "pi_incl"
    PI2_INCL = "pi2_incl"
    PI_ISO = "pi_iso"
    PI_ISO_INV = "pi_iso_inv"
    CONTR_TO_UNIT = "contr_to_unit"
