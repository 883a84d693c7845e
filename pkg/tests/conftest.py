from pathlib import Path

import pytest

from batchcodes.gf2core import read_matrix

FIXTURES = Path(__file__).parent / "fixtures"

_acceptance: dict[int, tuple[str, list[str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(n, title): exit criterion number n")


def pytest_runtest_logreport(report):
    marker = getattr(report, "_acceptance", None)
    if marker is None:
        return
    n, title = marker
    _, outcomes = _acceptance.setdefault(n, (title, []))
    if report.when == "call" or report.outcome != "passed":
        outcomes.append(report.outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is not None:
        report._acceptance = marker.args


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_acceptance):
        title, outcomes = _acceptance[n]
        verdict = "PASS" if outcomes and all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"[{verdict}] criterion {n:>2}: {title}")


@pytest.fixture(scope="session")
def example():
    def load(i: int):
        return read_matrix(FIXTURES / f"example{i}.txt")

    return load
