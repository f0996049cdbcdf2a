"""Acceptance bookkeeping.

Tests marked `@pytest.mark.criterion(N)` feed a per-criterion verdict that is
printed at the end of the run.  A criterion passes only if every test carrying
its marker passed; an expected failure counts as FAIL, with its reason shown.
"""

import pytest

_verdicts: dict[int, list[tuple[str, bool, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): test belongs to acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        passed = report.passed and not hasattr(report, "wasxfail")
        note = getattr(report, "wasxfail", "") or ("" if passed else report.outcome)
        _verdicts.setdefault(marker.args[0], []).append((item.name, passed, note))


def pytest_terminal_summary(terminalreporter):
    if not _verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_verdicts):
        results = _verdicts[number]
        ok = all(p for _, p, _ in results)
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} ({len(results)} tests)")
        for name, passed, note in results:
            if not passed:
                terminalreporter.write_line(f"    {name}: {note}")
