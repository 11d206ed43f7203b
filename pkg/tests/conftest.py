import pytest

from ortho_hecke.exact_linalg import Field


@pytest.fixture(scope="session")
def F3():
    return Field(3)


@pytest.fixture(scope="session")
def QF():
    return Field(0)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS, line
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(line(n))
