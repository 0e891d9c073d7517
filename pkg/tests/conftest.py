import os

import pytest

from sbtlab.search import build_distance_table


def pytest_collection_modifyitems(config, items):
    if os.environ.get("SBTLAB_EXTENDED") == "1":
        return
    skip = pytest.mark.skip(reason="extended check; set SBTLAB_EXTENDED=1 to run")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def tables():
    """Distance tables for n = 0..8 (n+1 <= 9 symbols)."""
    return {n: build_distance_table(n) for n in range(9)}


_acceptance: dict = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _acceptance[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for nodeid, outcome in _acceptance.items():
        label = nodeid.split("::")[-1]
        word = {"passed": "PASS", "failed": "FAIL"}.get(outcome, outcome.upper())
        terminalreporter.write_line(f"{word:<8} {label}")
