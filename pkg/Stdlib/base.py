from functools import lru_cache

from Kernel.formula import TOP, Defined, Eq, Sequent
from Kernel.sort import Sort
from Kernel.symbol import FunSymbol, ft_name, ty_name
from Kernel.term import App, Var
from Kernel.theory import Axiom, Theory

BASE_NAME = "base"
EMPTY_CONTEXT = "emp"


@lru_cache(maxsize=8)
def base_theory(max_level: int) -> Theory:
    """emp, ty_n and ft_n for n < max_level, total, with every level-0 type over emp."""
    emp = FunSymbol(EMPTY_CONTEXT, (), Sort.ctx(0))
    funs = [emp]
    axioms = [Axiom("emp_def", Sequent((), TOP, (Defined(App(emp, ())),)))]
    for n in range(max_level):
        ty = FunSymbol(ty_name(n), (Sort.tm(n),), Sort.ty(n))
        ft = FunSymbol(ft_name(n), (Sort.ty(n),), Sort.ctx(n))
        funs += [ty, ft]
        x, a = Var("x", Sort.tm(n)), Var("A", Sort.ty(n))
        axioms.append(Axiom(f"{ty.name}_def", Sequent((x,), TOP, (Defined(App(ty, (x,))),))))
        axioms.append(Axiom(f"{ft.name}_def", Sequent((a,), TOP, (Defined(App(ft, (a,))),))))
    a0 = Var("A", Sort.ty(0))
    if max_level > 0:
        ft0 = funs[2]
        axioms.append(Axiom("ft0_emp", Sequent((a0,), TOP, (Eq(App(ft0, (a0,)), App(emp, ())),))))
    names = {f.name for f in funs} | {ax.name for ax in axioms}
    return Theory(BASE_NAME, tuple(funs), (), tuple(axioms), frozenset(names))
