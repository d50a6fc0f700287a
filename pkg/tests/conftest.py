import pytest

from odolab import corpus
from odolab.workspace import builtin_fixtures, load


@pytest.fixture(scope="session")
def ws():
    return load(builtin_fixtures())


@pytest.fixture(scope="session")
def S3():
    return corpus.group("S3")


@pytest.fixture(scope="session")
def D4():
    return corpus.group("D4")


@pytest.fixture(scope="session")
def S4():
    return corpus.group("S4")


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, 12):
        if n in RESULTS:
            ok, detail = RESULTS[n]
            terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
