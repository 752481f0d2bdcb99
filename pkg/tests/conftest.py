import pytest

from wldl.parser import parse
from wldl.semiring import get_semiring

AB = ("a", "b")


def p(kind, text, semiring=None, alphabet=AB):
    S = get_semiring(semiring) if isinstance(semiring, str) else semiring
    return parse(kind, text, alphabet, S)


@pytest.fixture
def parse_as():
    return p


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
