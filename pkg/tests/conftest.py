import pytest

_criteria: dict[str, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion this test decides")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _criteria.setdefault(m.args[0], {"nodes": set(), "failed": False, "seen": set()})
            _criteria[m.args[0]]["nodes"].add(item.nodeid)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is None:
        return
    entry = _criteria[m.args[0]]
    if rep.failed:
        entry["failed"] = True
    if rep.when == "call":
        entry["seen"].add(item.nodeid)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_criteria, key=lambda s: (int(s.split()[0]), s)):
        e = _criteria[label]
        # a criterion whose tests were deselected or skipped is not a pass
        if e["failed"]:
            status = "FAIL"
        elif e["seen"] == e["nodes"]:
            status = "PASS"
        else:
            status = "NOT RUN"
        terminalreporter.write_line(f"{status}  criterion {label}")
