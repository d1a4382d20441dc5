import sys
import random

import pytest

from subatomic.verdict import DEFAULT_BOUNDS


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture
def bounds():
    return DEFAULT_BOUNDS


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.LINES):
        terminalreporter.write_line(mod.LINES[n])
