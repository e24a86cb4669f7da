import pytest

from zeta_lab.numeric_core import NumericContext

_criteria = {}


def pytest_addoption(parser):
    parser.addoption("--full", action="store_true", default=False,
                     help="also run the full-size (N = 10^7) reproduction")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")
    config.addinivalue_line("markers", "full: long full-size run, needs --full")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--full"):
        return
    skip = pytest.mark.skip(reason="full-size run; pass --full")
    for item in items:
        if "full" in item.keywords:
            item.add_marker(skip)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    n, title = mark.args
    entry = _criteria.setdefault(n, {"title": title, "passed": 0, "failed": 0, "skipped": 0})
    if rep.skipped:
        entry["skipped"] += 1
    elif rep.failed:
        entry["failed"] += 1
    elif rep.when == "call":
        entry["passed"] += 1


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        e = _criteria[n]
        if e["failed"]:
            status = "FAIL"
        elif e["passed"]:
            status = "PASS"
        else:
            status = "SKIP"
        detail = f"{e['passed']} passed, {e['failed']} failed"
        if e["skipped"]:
            detail += f", {e['skipped']} skipped"
        terminalreporter.write_line(f"criterion {n:>2}: {status}  {e['title']}  ({detail})")


@pytest.fixture
def ctx40():
    return NumericContext(40)


@pytest.fixture
def ctx30():
    return NumericContext(30)
