import zlib

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from hopfbrauer.bismash import BismashProduct
from hopfbrauer.factored import parse_group_text, sn_family
from hopfbrauer.hreps import char0_data, modular_data

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("default")

# Small factorizations beyond the S_n family, each chosen for one feature:
# non-self-dual simples (C3, A4), a skew simple (Q8), G = Q (dual C3).
EXTRA_GROUPS = {
    "C3": "(1,2,3)\n\n(1,2,3)\n\n()\n",
    "dualC3": "(1,2,3)\n\n()\n\n(1,2,3)\n",
    "A4": "(1,2,3)\n(1,2)(3,4)\n\n(1,2,3)\n\n(1,2)(3,4)\n(1,3)(2,4)\n",
    "Q8": "(1,2,3,4)(5,6,7,8)\n(1,5,3,7)(2,8,4,6)\n\n"
          "(1,2,3,4)(5,6,7,8)\n(1,5,3,7)(2,8,4,6)\n\n()\n",
}


@pytest.fixture(scope="session")
def family():
    """H_n for n = 3, 4, 5, built (and axiom-checked) once."""
    return {n: BismashProduct(sn_family(n)) for n in (3, 4, 5)}


@pytest.fixture(scope="session")
def extra():
    return {k: BismashProduct(parse_group_text(v, k)) for k, v in EXTRA_GROUPS.items()}


@pytest.fixture(scope="session")
def char0(family, extra):
    out = {}
    for key, H in list(family.items()) + list(extra.items()):
        out[key] = char0_data(H, np.random.default_rng([7, zlib.crc32(str(key).encode())]), explicit=True)
    return out


@pytest.fixture(scope="session")
def modular(family):
    out = {}
    for n, H in family.items():
        for p in (3, 5, 7):
            out[n, p] = modular_data(H, p, np.random.default_rng([11, n, p]))
    return out


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import ACCEPTANCE_LINES
    except ImportError:
        return
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
