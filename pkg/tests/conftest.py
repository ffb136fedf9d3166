import os

import pytest


def pytest_collection_modifyitems(config, items):
    if os.environ.get("TKKLAB_TIER", "small") == "large":
        return
    skip = pytest.mark.skip(reason="large tier; set TKKLAB_TIER=large")
    for item in items:
        if "large" in item.keywords:
            item.add_marker(skip)


ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
