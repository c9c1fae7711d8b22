from __future__ import annotations

import pytest

_VERDICTS: list[tuple[str, bool, str]] = []


@pytest.fixture
def criterion():
    """Record a named pass/fail line for the terminal summary, then assert."""

    def record(name: str, ok: bool, detail: str = "") -> None:
        _VERDICTS.append((name, bool(ok), detail))
        assert ok, f"{name}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _VERDICTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
