import os
import tempfile

os.environ.setdefault("TTK_LOG_DIR", os.path.join(tempfile.gettempdir(), "ttk-test-logs"))
os.environ.setdefault("TTK_LOG_LEVEL", "WARNING")

import pytest  # noqa: E402
from hypothesis import HealthCheck, settings  # noqa: E402

from Kernel.formula import TOP, Defined, Eq, Sequent  # noqa: E402
from Kernel.sort import Sort  # noqa: E402
from Kernel.symbol import FunSymbol  # noqa: E402
from Kernel.term import App, Var  # noqa: E402
from Kernel.theory import Axiom, Theory  # noqa: E402
from Stdlib.base import base_theory  # noqa: E402
from Stdlib.registry import stdlib_theory  # noqa: E402

settings.register_profile("dev", max_examples=50, deadline=None)
settings.register_profile("ci", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("fast", max_examples=10, deadline=None)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "dev"))


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run desk-scale tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: desk-scale run, needs --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


def nat_theory() -> Theory:
    """A level-0 type N with zero and a total successor on N."""
    base = base_theory(2)
    N = FunSymbol("N", (), Sort.ty(0))
    z = FunSymbol("z", (), Sort.tm(0))
    s = FunSymbol("s", (Sort.tm(0),), Sort.tm(0))
    ty0 = base.fun("ty0")
    x = Var("x", Sort.tm(0))
    n, zero = App(N, ()), App(z, ())
    on_n = (Eq(App(ty0, (x,)), n),)
    axioms = [
        Axiom("N_def", Sequent((), TOP, (Defined(n),))),
        Axiom("z_def", Sequent((), TOP, (Defined(zero),))),
        Axiom("z_ty", Sequent((), TOP, (Eq(App(ty0, (zero,)), n),))),
        Axiom("s_def", Sequent((x,), on_n, (Defined(App(s, (x,))),))),
        Axiom("s_ty", Sequent((x,), on_n, (Eq(App(ty0, (App(s, (x,)),)), n),))),
    ]
    return base.extend(name="nat", funs=[N, z, s], axioms=axioms)


@pytest.fixture(scope="session")
def base():
    return base_theory(2)


@pytest.fixture(scope="session")
def nat():
    return nat_theory()


@pytest.fixture(scope="session")
def t_pi():
    return stdlib_theory("t_pi").payload


@pytest.fixture(scope="session")
def t_pi1():
    return stdlib_theory("t_pi1").payload


@pytest.fixture(scope="session")
def t_pi2():
    return stdlib_theory("t_pi2").payload
