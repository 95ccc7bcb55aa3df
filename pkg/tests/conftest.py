import json
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"

_acceptance = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label): exit criterion, reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    label = marker.args[0]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        if _acceptance.get(label, "passed") == "passed":
            _acceptance[label] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_acceptance):
        status = "PASS" if _acceptance[label] == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {label}")


@pytest.fixture(scope="session")
def table1():
    data = json.loads((FIXTURES / "table1_reduced_tau.json").read_text())
    return {int(k): v for k, v in data.items()}
