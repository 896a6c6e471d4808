import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from metric_recognizer import apsp, counterexample_graph, hypercube, petersen  # noqa: E402
from oracles import unit_weights  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def unit_q3():
    return apsp(unit_weights(hypercube(3)))


@pytest.fixture(scope="session")
def unit_q2():
    return apsp(unit_weights(hypercube(2)))


@pytest.fixture(scope="session")
def unit_petersen():
    return apsp(unit_weights(petersen()))


@pytest.fixture(scope="session")
def unit_counterexample():
    return apsp(unit_weights(counterexample_graph()))


@pytest.fixture
def report():
    """Record one acceptance line; printed in the terminal summary."""
    def record(number, title, passed, detail=""):
        mark = "PASS" if passed else "FAIL"
        ACCEPTANCE_LINES.append(f"[{mark}] criterion {number:2d}: {title}" + (f"  ({detail})" if detail else ""))
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
