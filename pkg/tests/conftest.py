from __future__ import annotations

import os
import sys
import tempfile
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_CACHE = tempfile.mkdtemp(prefix="idealtop-cache-")
os.environ["IDEALTOP_CACHE_DIR"] = _CACHE


@pytest.fixture(autouse=True)
def _fresh_cache_state():
    from idealtop.convergence import CACHE

    CACHE.enabled = True
    yield
    CACHE.enabled = True


# ------------------------------------------------------- acceptance report

SESSION = {"start": None, "lines": []}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): numbered acceptance criterion")
    config.addinivalue_line("markers", "suite_clock: runs last and checks the elapsed session time")


def pytest_sessionstart(session):
    SESSION["start"] = time.perf_counter()


def pytest_collection_modifyitems(items):
    # the wall-clock criterion has to see everything else run first
    items.sort(key=lambda item: item.get_closest_marker("suite_clock") is not None)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        return
    n, title = mark.args
    verdict = "PASS" if rep.passed else "FAIL"
    SESSION["lines"].append((n, f"{verdict}  criterion {n:>2}: {title} ({rep.duration:.2f} s)"))


def pytest_terminal_summary(terminalreporter):
    if not SESSION["lines"]:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(SESSION["lines"]):
        terminalreporter.write_line(line)
