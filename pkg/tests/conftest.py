"""Shared fixtures and the per-criterion PASS/FAIL summary for the acceptance suite."""

from __future__ import annotations

import pytest

from g2braid.lattice import Weight

_RESULTS: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by a test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    failed = report.failed or (report.when == "call" and report.skipped)
    if report.when == "call" or failed:
        prev = _RESULTS.get(number, ("PASS", title))[0]
        _RESULTS[number] = ("FAIL" if failed or prev == "FAIL" else "PASS", title)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        status, title = _RESULTS[number]
        terminalreporter.write_line(f"{status} criterion {number:2d}: {title}")


def young(a: int, b: int) -> Weight:
    return Weight.from_young(a, b)


@pytest.fixture
def y():
    """Build weights from Young labels: ``y(2, 1)`` is ``[2,1]``."""
    return young
