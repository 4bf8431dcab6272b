import re

import pytest

_ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    m = re.search(r"test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    n, label = int(m.group(1)), m.group(2).replace("_", " ")
    if report.when == "call":
        if report.passed and not hasattr(report, "wasxfail"):
            _ACCEPTANCE[n] = ("PASS", label)
        else:
            _ACCEPTANCE[n] = ("FAIL", label)
    elif report.when == "setup" and report.skipped:
        _ACCEPTANCE[n] = ("FAIL", label + " (not run)")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        status, label = _ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {label}")


@pytest.fixture(scope="session")
def sympy():
    return pytest.importorskip("sympy")
