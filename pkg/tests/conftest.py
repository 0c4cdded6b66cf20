import os

import pytest

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def pytest_collection_modifyitems(config, items):
    if os.environ.get("DUALDEFECT_EXTENDED") == "1":
        return
    skip = pytest.mark.skip(reason="extended run; set DUALDEFECT_EXTENDED=1")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)
            if "criterion" in item.name:
                ACCEPTANCE_LINES.append(f"SKIP {item.name}: extended run; set DUALDEFECT_EXTENDED=1")
