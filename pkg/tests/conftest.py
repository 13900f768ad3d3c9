from functools import lru_cache

import pytest

from mubkit import mub

ACCEPTANCE_LINES: list[str] = []


@lru_cache(maxsize=None)
def complete_set(n: int) -> mub.MubSet:
    return mub.construct(n)


@pytest.fixture
def record_criterion():
    def _record(label: str, passed: bool, detail: str = "") -> None:
        ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] {label}" + (f"  ({detail})" if detail else ""))

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
