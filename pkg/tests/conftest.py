import numpy as np
import pytest

from balpart import BalanceSpec, Partition, from_edges

_CRITERIA = {}


def cycle(n):
    return from_edges([(i, (i + 1) % n) for i in range(n)], id_map=np.arange(n))


def path(n):
    return from_edges([(i, i + 1) for i in range(n - 1)], id_map=np.arange(n))


def star(leaves):
    return from_edges([(0, i) for i in range(1, leaves + 1)], id_map=np.arange(leaves + 1))


def part(g, assignment, k=2, eps=0.0):
    return Partition(np.asarray(assignment), BalanceSpec(g.n, k, eps))


@pytest.fixture
def c4():
    return cycle(4)


def pytest_runtest_logreport(report):
    criterion = getattr(report, "criterion", None)
    if criterion is None:
        for name, value in report.user_properties:
            if name == "criterion":
                criterion = value
    if criterion is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        outcome = "SKIP" if report.skipped else ("PASS" if report.passed else "FAIL")
        detail = ""
        if report.skipped and isinstance(report.longrepr, tuple):
            detail = report.longrepr[2]
        _CRITERIA.setdefault(criterion, []).append((outcome, report.nodeid.split("::")[-1], detail))


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_setup(item):
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        item.user_properties.append(("criterion", f"{mark.args[0]}. {mark.args[1]}"))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA, key=lambda s: int(s.split(".")[0])):
        results = _CRITERIA[name]
        outcomes = {r[0] for r in results}
        overall = "FAIL" if "FAIL" in outcomes else ("SKIP" if "SKIP" in outcomes else "PASS")
        terminalreporter.write_line(f"{overall:4s}  criterion {name}")
        for outcome, test, detail in results:
            if outcome != "PASS" or len(results) > 1:
                extra = f": {detail}" if detail else ""
                terminalreporter.write_line(f"        {outcome:4s} {test}{extra}")
