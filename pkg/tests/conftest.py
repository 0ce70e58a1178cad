import pytest

CRITERIA = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            CRITERIA.setdefault(m.args[0], {"title": m.args[1], "outcomes": []})


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        CRITERIA[m.args[0]]["outcomes"].append(rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(CRITERIA):
        c = CRITERIA[num]
        if not c["outcomes"]:
            status = "SKIP"
        else:
            status = "PASS" if all(c["outcomes"]) else "FAIL"
        terminalreporter.write_line(f"{status}  {num:>2}. {c['title']}")
