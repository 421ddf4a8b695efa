import functools
import zlib

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from skewpoly import ExtField, default_modulus

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def _ring(p, r, seed=0):
    return ExtField(p, default_modulus(p, r), rng=np.random.default_rng([seed, p, r]))


@pytest.fixture
def make_ring():
    """Cached tower F_{p^r} over F_p with the default modulus."""
    return _ring


@pytest.fixture
def rng(request):
    # stable per test
    return np.random.default_rng(zlib.crc32(request.node.nodeid.encode()))


@pytest.fixture
def f4():
    return ExtField(2, (1, 1, 1), normal_basis=[[1, 1], [0, 1]])


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("tests.test_acceptance") or sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for idx in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[idx])
