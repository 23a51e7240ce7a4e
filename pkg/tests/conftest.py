import re

import pytest

from wsnu import kernels

_CRITERION = re.compile(r"test_criterion_(\d+)_")
_outcomes = {}


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    return request.param


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    key = int(m.group(1))
    name = report.nodeid.split("::")[-1]
    prev = _outcomes.get(key, (True, name))
    failed = report.failed or (report.when == "call" and report.outcome != "passed")
    if report.when == "call" or report.failed:
        _outcomes[key] = (prev[0] and not failed, name)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_outcomes):
        ok, name = _outcomes[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  ({name})")
