import random

import pytest

from curvedefect import CurveMap, connected_sum, random_curve, torus_knot

TORUS_PAIRS = [(2, 3), (2, 5), (3, 4), (4, 3), (3, 5), (5, 4), (4, 5), (3, 7)]


def corpus(random_count=20, max_n=14, seed=7):
    out = [CurveMap.circle()] + [torus_knot(p, q) for p, q in TORUS_PAIRS]
    out.append(connected_sum(torus_knot(3, 4), torus_knot(4, 3)))
    rng = random.Random(seed)
    out += [random_curve(rng.randint(1, max_n), s) for s in range(random_count)]
    return out


@pytest.fixture
def trefoil():
    return torus_knot(2, 3)


@pytest.fixture(scope="session")
def curves():
    return corpus()


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
