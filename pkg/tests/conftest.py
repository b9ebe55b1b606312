import sys

import pytest

from cmreg.poly import GF, QQ, Polynomial, RingSpec


def poly(ring, text):
    """Parse a polynomial through the script language (keeps tests readable)."""
    from cmreg.dsl import _Parser, _eval

    p = _Parser(text)
    tree = p.expr()
    return _eval(tree, ring, set(ring.names))


@pytest.fixture
def P():
    return poly


@pytest.fixture
def R2():
    return RingSpec(QQ, 0, 2)


@pytest.fixture
def R3():
    return RingSpec(QQ, 0, 3)


@pytest.fixture
def R11():
    return RingSpec(QQ, 1, 1)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
