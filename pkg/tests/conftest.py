"""Shared fixtures: one small table for unit tests, one large table for
the acceptance suite, and a terminal section that prints a pass/fail
line per acceptance criterion."""

from __future__ import annotations

import time
from dataclasses import dataclass

import pytest

from dysonrank import RankTable, build_rank_table

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def table() -> RankTable:
    """Counts up to n = 240; enough for every unit test."""
    return build_rank_table(240)


@dataclass(frozen=True)
class BigTable:
    table: RankTable
    build_seconds: float


@pytest.fixture(scope="session")
def big_table() -> BigTable:
    """Counts up to n = 2000 for the acceptance suite, with the build
    time recorded so runtime budgets can include it."""
    start = time.perf_counter()
    t = build_rank_table(2000)
    return BigTable(t, time.perf_counter() - start)


@pytest.fixture(scope="session")
def criterion():
    """Callable recording one acceptance-criterion outcome.  The line
    is stored before the assert fires so failures still print."""

    def record(number: int, description: str, ok: bool, note: str = "") -> None:
        verdict = "PASS" if ok else "FAIL"
        line = f"criterion {number:2d} {verdict}: {description}"
        if note:
            line += f"  [{note}]"
        _ACCEPTANCE_LINES.append(line)
        assert ok, f"acceptance criterion {number} failed: {description}"

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
