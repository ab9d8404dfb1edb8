import re

import pytest

_results: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    match = re.search(r"test_criterion_(\d+)", report.nodeid)
    if not match:
        return
    number = int(match.group(1))
    title = _titles.get(number, "")
    outcome = "PASS" if report.passed else "FAIL"
    _results[number] = (outcome, title)


_titles: dict[int, str] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        marker = item.get_closest_marker("criterion")
        if marker:
            _titles[marker.args[0]] = marker.args[1]


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        outcome, title = _results[number]
        terminalreporter.write_line(f"criterion {number:2d}: {outcome}  {title}")
    passed = sum(1 for o, _ in _results.values() if o == "PASS")
    terminalreporter.write_line(f"{passed}/{len(_results)} criteria pass")


@pytest.fixture(scope="session")
def scenarios():
    from dimform.scenarios import SCENARIO_NAMES, builtin_scenario

    return {name: builtin_scenario(name) for name in SCENARIO_NAMES}
