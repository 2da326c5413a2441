import pytest

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion this test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        number, title = marker.args
        entry = _CRITERIA.setdefault(number, {"title": title, "passed": 0, "failed": []})
        if report.passed:
            entry["passed"] += 1
        else:
            entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        entry = _CRITERIA[number]
        total = entry["passed"] + len(entry["failed"])
        status = "PASS" if not entry["failed"] else "FAIL"
        line = f"criterion {number}: {status}  {entry['title']} ({entry['passed']}/{total} checks)"
        if entry["failed"]:
            line += "  failing: " + ", ".join(entry["failed"])
        tr.write_line(line)
