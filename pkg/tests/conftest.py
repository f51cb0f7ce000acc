import pytest

from modvec.modarith import precompute_params


@pytest.fixture(scope="session")
def p17():
    return precompute_params(17, 5)


@pytest.fixture(scope="session")
def p97():
    return precompute_params(97, 7)


@pytest.fixture(scope="session")
def baby_bear():
    # 15 * 2^27 + 1
    return precompute_params(2013265921, 31)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
