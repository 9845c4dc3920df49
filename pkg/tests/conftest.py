import pytest

from qissre.qec import PhysicalParams
from qissre.scenarios import get_scenario

# Lines recorded by the acceptance suite, echoed in the terminal summary.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def flat3() -> PhysicalParams:
    return get_scenario("flat-1e-3").params
