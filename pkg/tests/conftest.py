from functools import lru_cache

import pytest

from seventerm.fixtures import build
from seventerm.maps import SevenTermContext

ACCEPTANCE_LINES = {}


@lru_cache(maxsize=None)
def context(name: str) -> SevenTermContext:
    return SevenTermContext(*build(name))


@pytest.fixture
def ctx_of():
    return context


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
