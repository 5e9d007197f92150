import os

import pytest

ACCEPTANCE: list[tuple[str, bool, str]] = []

LONG = os.environ.get("DIFFSETS_LONG") == "1"


def record(criterion: str, ok: bool, detail: str = "") -> None:
    ACCEPTANCE.append((criterion, ok, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {criterion}  {detail}")


def pytest_collection_modifyitems(config, items):
    if LONG:
        return
    skip = pytest.mark.skip(reason="long-running; set DIFFSETS_LONG=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)
