import random

import pytest

from fields import record_certificates

ACCEPTANCE = {}

# installed before test modules import extactica names, so that certificates
# produced anywhere in the suite are visible to the acceptance checks
record_certificates()


def pytest_collection_modifyitems(items):
    items.sort(key=lambda item: "test_acceptance.py" in item.nodeid)


@pytest.fixture
def rng():
    return random.Random(20261019)


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        ACCEPTANCE[report.nodeid.split("::")[-1]] = report.outcome
    elif "test_acceptance.py" in report.nodeid and report.failed:
        ACCEPTANCE[report.nodeid.split("::")[-1]] = "failed"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE):
        status = "PASS" if ACCEPTANCE[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")
