import numpy as np
import pytest

from specrep.generators import rng_for


@pytest.fixture
def rng():
    return rng_for(20261014)


@pytest.fixture
def swap_shift():
    """The 2x2 weighted shift [[0, 2], [1, 0]] used throughout as a non-normal example."""
    return np.array([[0, 2], [1, 0]], dtype=complex)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(module, "ACCEPTANCE_LINES", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(lines):
        terminalreporter.write_line(lines[number])
