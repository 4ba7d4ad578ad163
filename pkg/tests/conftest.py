import pytest

from cubicgit.maximal import enumerate_maximal

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def table1_records():
    return enumerate_maximal(6, 3, strict=False)


@pytest.fixture(scope="session")
def table2_records():
    return enumerate_maximal(6, 3, strict=True)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
