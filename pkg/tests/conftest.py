import time

import pytest

from lfpoly.builders import build_polytope
from lfpoly.scenario import Scenario

ACCEPTANCE_LINES = []


def record_acceptance(number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


class TimedPolytope:
    def __init__(self, kind, scenario):
        start = time.perf_counter()
        self.polytope = build_polytope(kind, scenario)
        self.seconds = time.perf_counter() - start

    def __getattr__(self, name):
        return getattr(self.polytope, name)


@pytest.fixture(scope="session")
def lf32():
    return TimedPolytope("lf", Scenario(3, 2))


@pytest.fixture(scope="session")
def lhv32():
    return TimedPolytope("lhv", Scenario(3, 2))


@pytest.fixture(scope="session")
def s32():
    return Scenario(3, 2)
