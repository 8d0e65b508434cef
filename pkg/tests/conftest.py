from pathlib import Path

import pytest

from oakit.oa import read_oa

DATA = Path(__file__).parent / "data"


def data_path(name: str) -> Path:
    return DATA / name


def load(name: str):
    return read_oa(DATA / name)


@pytest.fixture(scope="session")
def table1():
    return load("table1.oa")


@pytest.fixture(scope="session")
def table2():
    return load("table2.oa")


@pytest.fixture(scope="session")
def table3():
    return load("table3.oa")


@pytest.fixture(scope="session")
def example3_d():
    return load("example3_D.oa")


# --- acceptance summary ---------------------------------------------------------------

_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or report.failed:
        name = report.nodeid.split("::test_criterion_")[1]
        num, _, title = name.partition("_")
        outcome = "PASS" if report.passed else "FAIL"
        if int(num) not in _CRITERIA or outcome == "FAIL":
            _CRITERIA[int(num)] = (outcome, title.replace("_", " "))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for num in sorted(_CRITERIA):
        outcome, title = _CRITERIA[num]
        terminalreporter.write_line(f"criterion {num}: {outcome}  {title}")
