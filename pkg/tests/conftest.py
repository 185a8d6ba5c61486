"""Collects one verdict per acceptance criterion and prints them after the run."""

import pytest


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion this test belongs to")
    config.stash[VERDICTS] = {}


VERDICTS = pytest.StashKey[dict]()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or (report.when != "call" and report.passed):
        return
    number, title = marker.args
    verdicts = item.config.stash[VERDICTS]
    entry = verdicts.setdefault(number, {"title": title, "failed": [], "notes": []})
    if report.failed or report.skipped:
        entry["failed"].append(item.name)
    if report.when == "call":
        entry["notes"].extend(value for key, value in item.user_properties if key == "note")


def pytest_terminal_summary(terminalreporter, config):
    verdicts = config.stash[VERDICTS]
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(verdicts):
        entry = verdicts[number]
        status = "FAIL" if entry["failed"] else "PASS"
        line = f"criterion {number}: {status}  {entry['title']}"
        if entry["notes"]:
            line += "  [" + "; ".join(entry["notes"]) + "]"
        if entry["failed"]:
            line += "  failing: " + ", ".join(entry["failed"])
        terminalreporter.write_line(line)
