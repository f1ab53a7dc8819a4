import numpy as np
import pytest

from quasiexp.simplex import parse_polynomial

EXAMPLE_G = "th1^2 - th1*th2 + th2^2 + 0.05"

# filled by test_acceptance, reported at the end of the run
ACCEPTANCE_LINES: dict[str, str] = {}


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def witness_g():
    return parse_polynomial(EXAMPLE_G, 6)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[name])
