from __future__ import annotations

import pytest

_LINES: dict[int, str] = {}


@pytest.fixture()
def record():
    """record(n, passed, detail): one summary line per acceptance criterion."""

    def _record(n: int, passed: bool, detail: str) -> None:
        _LINES[n] = f"criterion {n:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
        print(_LINES[n])

    return _record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(_LINES):
            terminalreporter.write_line(_LINES[n])
