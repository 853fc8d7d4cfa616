from __future__ import annotations

import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from reparam import ClosedInterval, StopFamily

ACCEPTANCE_LINES: list[str] = []

GOLDEN = Path(__file__).parent / "golden"


def iv(lo, hi) -> ClosedInterval:
    return ClosedInterval.of(lo, hi)


def fam(*pairs) -> StopFamily:
    return StopFamily(tuple(iv(a, b) for a, b in pairs))


def F(text) -> Fraction:
    return Fraction(text)


@pytest.fixture
def run_cli():
    def run(args, cwd=None, env=None):
        return subprocess.run(
            [sys.executable, "-m", "reparam", *args],
            cwd=cwd, env=env, capture_output=True, text=True, check=False, timeout=60,
        )
    return run


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
