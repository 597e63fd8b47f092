import sys

import pytest

from starfactor import named


@pytest.fixture
def double_star():
    return named.double_star()


@pytest.fixture
def long_double_star():
    return named.long_double_star()



def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
