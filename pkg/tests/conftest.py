from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rml.codefile import load_code  # noqa: E402

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "rml" / "fixtures"


@pytest.fixture
def fixture_code():
    return lambda name: load_code(FIXTURES / f"{name}.json")


@pytest.fixture
def fixture_path():
    return lambda name: str(FIXTURES / f"{name}.json")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
