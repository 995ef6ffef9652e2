import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


def random_euler_states(rng, n, gamma=1.4):
    """Admissible states with rho, p in [0.1, 10] and v in [-3, 3]."""
    from edfv.laws import Euler

    rho = rng.uniform(0.1, 10.0, n)
    v = rng.uniform(-3.0, 3.0, n)
    p = rng.uniform(0.1, 10.0, n)
    return Euler(gamma).conserved(rho, v, p)


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion.

    Usage: ``criterion(n, ok, detail)``; the test still has to assert.
    """
    def record(number, ok, detail):
        line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append((number, line))
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
