from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_RESULTS: dict[int, tuple[str, bool]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = _MARKERS.get(report.nodeid)
    if marker is None:
        return
    number, title = marker
    ok = report.passed and _RESULTS.get(number, (title, True))[1]
    _RESULTS[number] = (title, ok)


_MARKERS: dict[str, tuple[int, str]] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("acceptance")
        if m is not None:
            _MARKERS[item.nodeid] = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        title, ok = _RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d} [{'PASS' if ok else 'FAIL'}] {title}")
