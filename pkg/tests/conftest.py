from __future__ import annotations

import time

import pytest

_results = pytest.StashKey[dict]()
_started = pytest.StashKey[float]()

SUITE_BUDGET = 60.0


def pytest_configure(config):
    config.stash[_results] = {}
    config.stash[_started] = time.perf_counter()


@pytest.fixture
def acceptance_log(request):
    return request.config.stash[_results]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash[_results]
    if not results:
        return
    elapsed = time.perf_counter() - config.stash[_started]
    if 10 in results:
        ok, detail = results[10]
        within = elapsed < SUITE_BUDGET
        results[10] = (ok and within, f"{detail}; full suite {elapsed:.1f}s (budget {SUITE_BUDGET:.0f}s)")
        if not within:
            terminalreporter.session.exitstatus = pytest.ExitCode.TESTS_FAILED
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        ok, detail = results[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
