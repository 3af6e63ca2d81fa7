import pytest

from ssgb.algebra import Ring
from ssgb.frontend import parse_polynomial

ACCEPTANCE_LINES = []


def poly(ring, text):
    return parse_polynomial(ring, text)


@pytest.fixture
def xyz():
    return Ring(32003, 3, "grevlex", ["x", "y", "z"])


@pytest.fixture
def xy7():
    return Ring(7, 2, "grevlex", ["x", "y"])


@pytest.fixture
def record_acceptance():
    def record(number, name, passed, detail=""):
        status = "PASS" if passed else "FAIL"
        ACCEPTANCE_LINES.append(f"[{status}] criterion {number}: {name} {detail}".rstrip())

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
