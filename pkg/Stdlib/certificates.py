"""Stored certificates for the stdlib theories.

Defining terms are written in theory-file syntax over the parameters
x1 … xk of their symbol; `(m, "T")` asserts ft^m(e(x_i)) = T.
"""
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from Core.Utils.exception import UndirectedAxiom
from Kernel.formula import Eq
from Kernel.morphism import parameters
from Kernel.theory import Theory
from Morita.lifting import Cond1Entry, Cond1Witness, identity_witness
from Rewriting.rules import TRS, RewriteRule, validate_trs
from Structure.welldefined import DefiningTerm, WellDefinedCert
from Syntax.elaborator import elaborate_term
from Syntax.parser import parse_term

Row = Tuple[int, Sequence[Tuple[int, str]]]

PI_TABLE: Dict[str, Row] = {
    "wk": (0, [(0, "emp"), (0, "emp")]),
    "v0": (0, [(0, "emp")]),
    "subty1": (0, [(1, "emp"), (0, "ft1(x1)")]),
    "subst1": (0, [(2, "emp"), (0, "ft1(ty1(x1))")]),
    "Pi": (0, [(0, "emp"), (0, "x1")]),
    "lam": (0, [(0, "emp"), (1, "x1")]),
    "app": (1, [(0, "emp"), (0, "x1"), (0, "Pi(x1, x2)"), (0, "x1")]),
}

ID_TABLE: Dict[str, Row] = {
    "Id": (0, [(1, "emp"), (0, "ty0(x1)")]),
}

REFL_TRANSPORT_TABLE: Dict[str, Row] = {
    **ID_TABLE,
    "refl": (0, [(1, "emp")]),
    "subty1": PI_TABLE["subty1"],
    "wk": PI_TABLE["wk"],
    "v0": PI_TABLE["v0"],
    "transport": (1, [
        (1, "emp"),
        (0, "ft1(x1)"),
        (0, "ft1(x1)"),
        (0, "Id(x2, x3)"),
        (0, "subty1(x1, x2)"),
    ]),
    "Id1": (0, [(2, "emp"), (0, "ty1(x1)")]),
    "refl1": (0, [(2, "emp")]),
    "comp1": (1, [(0, "emp"), (0, "emp"), (0, "emp"), (0, "wk(x2, x3)"), (0, "wk(x1, x2)")]),
}

UNIT_TABLE: Dict[str, Row] = {
    "top": (0, []),
    "unit": (0, []),
}

COMBINATORY_TABLE: Dict[str, Row] = {
    "S": (0, []),
    "K": (0, []),
    "ap": (0, [(1, "emp"), (1, "emp")]),
}

# symbols built from the others; basic condition-1 checks skip them
DERIVED_SYMBOLS = ("subst1", "subty1", "wk", "v0", "comp1")

T_PI_RULES = ("ft0_emp", "wk_ft", "v0_ty", "subty1_wk", "subst1_ty", "subst_v0", "lam_ty", "app_ty")

DIRECTED_RULES: Dict[str, Tuple[str, ...]] = {
    "t_pi": T_PI_RULES + ("beta",),
    "t_pi1": T_PI_RULES + ("beta_def",),
    "t_pi2": T_PI_RULES + ("beta_lin",),
    "t_pi3": T_PI_RULES + ("beta_lin_def",),
    "combinatory": ("ft0_emp", "k_red", "s_red"),
}


def defining_terms(theory: Theory, name: str, row: Sequence[Tuple[int, str]]) -> Tuple[DefiningTerm, ...]:
    scope = {p.name: p for p in parameters(theory.fun(name))}
    return tuple(DefiningTerm(depth, elaborate_term(theory, parse_term(text), scope)) for depth, text in row)


def well_defined_cert(theory: Theory, table: Mapping[str, Row]) -> WellDefinedCert:
    return WellDefinedCert(
        rank={name: rank for name, (rank, _) in table.items()},
        defining_terms={name: defining_terms(theory, name, row) for name, (_, row) in table.items()},
    )


def directed_rules(theory: Theory, names: Iterable[str]) -> TRS:
    """The stored rule list: each named axiom read left to right."""
    rules = []
    for name in names:
        atom = theory.axiom(name).sequent.rhs[0]
        if not isinstance(atom, Eq):
            raise UndirectedAxiom(name, "non-equational-rhs")
        rules.append(RewriteRule(name, atom.lhs, atom.rhs))
    return validate_trs(rules, f"{theory.name}_directed")


def contr_to_unit_witness(source: Theory, target: Theory) -> Cond1Witness:
    """Identity lifts for the shared symbols; top and unit lift to C and c0."""
    table = {**REFL_TRANSPORT_TABLE, **UNIT_TABLE}
    base = identity_witness(target, well_defined_cert(target, table), DERIVED_SYMBOLS)
    entries = dict(base.entries)
    entries["top"] = Cond1Entry((), source.app("C"))
    entries["unit"] = Cond1Entry((), source.app("c0"))
    return Cond1Witness(entries, base.derived)
