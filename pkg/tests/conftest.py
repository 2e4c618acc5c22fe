import numpy as np
import pytest

from freewave import reaction

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance():
    """Recorder for one PASS/FAIL line per acceptance criterion."""
    def record(name, ok, detail):
        line = "%s  criterion %s: %s" % ("PASS" if ok else "FAIL", name, detail)
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return record


@pytest.fixture
def logistic():
    return reaction.logistic()


@pytest.fixture
def cubic25():
    return reaction.cubic_bistable(0.25)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def make_monostable(rng):
    """Random u (1 - u) (a + b u) with a > 0 and a + b > 0, so f > 0 on (0, 1)."""
    a = rng.uniform(0.3, 2.0)
    b = rng.uniform(-0.9 * a, 2.0)
    return reaction.polynomial([0.0, a, b - a, -b])


def make_bistable(rng):
    """Random positive multiple of a cubic with threshold below one half."""
    k = rng.uniform(0.3, 2.0)
    theta = rng.uniform(0.08, 0.42)
    base = reaction.cubic_bistable(theta)
    return reaction.polynomial([k * c for c in base.coeffs])
