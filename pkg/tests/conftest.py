import pytest

from quandle_homotopy.checks import ComplexFamily
from quandle_homotopy.quandle import alexander

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def f9_family():
    """R/D/Q/L complexes of F_9 with omega = t up to degree 5.

    The degree-5 quandle boundary is the most expensive matrix in the suite,
    so every test that needs it shares this one instance.
    """
    return ComplexFamily(alexander("alex:3:T^2+1"), 5)


@pytest.fixture(scope="session")
def d3():
    return alexander("dihedral:3")


@pytest.fixture
def verdict():
    """Record one pass/fail line per acceptance check; returns the flag."""
    def record(label, ok, detail=""):
        line = f"{label:<14} {'PASS' if ok else 'FAIL'}  {detail}"
        print(line)
        ACCEPTANCE_LINES.append(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
