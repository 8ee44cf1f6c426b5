import numpy as np
import pytest

from polyineq.bodies import Ball, Box, HPolytope, StandardSimplex, hull2d

# results of the acceptance criteria, printed at the end of the session
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key:>2}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def simplex():
    return StandardSimplex(2)


@pytest.fixture
def square():
    return Box([-1, -1], [1, 1])


@pytest.fixture
def disc():
    return Ball([0, 0], 1)


@pytest.fixture
def triangle_h():
    """The standard triangle as a plain H-polytope (no closed forms apply)."""
    return HPolytope([[-1, 0], [0, -1], [1, 1]], [0, 0, 1])


def random_hull(rng, n=7):
    while True:
        P = rng.standard_normal((n, 2))
        try:
            return hull2d(P)
        except Exception:
            continue


def simplex_points(rng, count, margin=0.02):
    out = []
    while len(out) < count:
        x = rng.dirichlet([1, 1, 1])
        if x.min() > margin:
            out.append(x[:2])
    return np.array(out)
