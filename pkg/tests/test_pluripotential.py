import math

import numpy as np
import pytest

from polyineq.bernstein import (baran_normal_derivative, baran_simplex_V, best_ellipse_simplex,
                                hypothesis_gap)
from polyineq.bodies import Box, StandardSimplex
from polyineq.chebyshev import extremal_value_real
from polyineq.config import Config
from polyineq.errors import DomainError
from polyineq.oracle import bernstein_oracle

from conftest import simplex_points


def test_vanishes_on_the_simplex():
    rng = np.random.default_rng(0)
    for x in simplex_points(rng, 50, margin=0.0):
        assert baran_simplex_V(x, np.zeros(2)) == 0.0
    assert baran_simplex_V([1.0, 0.0], [0.0, 0.0]) == 0.0


def test_interval_restriction_matches_real_extremal_value():
    # d = 1: modulus sum 2 + |1 - 2| = 3
    v = baran_simplex_V([2.0], [0.0])
    assert v == pytest.approx(math.log(3 + math.sqrt(8)), rel=1e-14)
    assert v == pytest.approx(extremal_value_real(Box([0], [1]), [2.0]), rel=1e-12)
    for x in (-0.5, 1.3, 4.0):
        assert baran_simplex_V([x], [0.0]) == pytest.approx(
            extremal_value_real(Box([0], [1]), [x]), rel=1e-12)


def test_real_points_outside_two_simplex():
    for x in ([1, 1], [-0.3, 0.2], [0.8, 0.5]):
        assert baran_simplex_V(x, [0, 0]) == pytest.approx(
            extremal_value_real(StandardSimplex(2), x), rel=1e-10)


def test_increases_along_imaginary_rays():
    rng = np.random.default_rng(1)
    for x in simplex_points(rng, 10, margin=0.05):
        y = rng.standard_normal(2)
        vals = [baran_simplex_V(x, s * y) for s in np.geomspace(1e-6, 10, 40)]
        assert vals[0] > 0
        assert all(b > a for a, b in zip(vals, vals[1:]))


def test_V_errors():
    with pytest.raises(DomainError):
        baran_simplex_V([0.1, 0.2], [0.0])
    with pytest.raises(DomainError):
        baran_simplex_V([math.nan], [0.0])


def test_normal_derivative_at_centroid():
    nd = baran_normal_derivative([1 / 3, 1 / 3], [1, 0])
    assert abs(nd.value - math.sqrt(6)) <= 1e-3
    assert nd.error <= 1e-3 and nd.monotone
    assert len(nd.eps) == len(nd.quotients) == 9
    assert nd.eps[0] == pytest.approx(1e-3) and nd.eps[-1] == pytest.approx(1e-7)


def test_normal_derivative_is_homogeneous():
    x, y = [0.2, 0.5], np.array([0.6, -0.8])
    base = baran_normal_derivative(x, y).value
    for c in (0.5, 2.0, 3.0):
        assert baran_normal_derivative(x, c * y).value == pytest.approx(c * base, rel=1e-4)


def test_gap_small_on_grid_and_stable_under_halving():
    cfg = Config()
    halved = cfg.replace(eps_max=cfg.eps_max / 2, eps_min=cfg.eps_min / 2)
    grid = [(i / 6, j / 6) for i in range(1, 6) for j in range(1, 6) if i + j < 6]
    th = np.pi * np.arange(8) / 8
    worst = 0.0
    for x in grid:
        for t in th:
            y = [math.cos(t), math.sin(t)]
            g = hypothesis_gap(x, y, cfg)
            assert abs(g - hypothesis_gap(x, y, halved)) <= 1e-4
            worst = max(worst, g)
    assert worst <= 1e-3


def test_gap_at_centroid():
    assert hypothesis_gap([1 / 3, 1 / 3], [1, 0]) <= 1e-3


def test_normal_derivative_errors():
    with pytest.raises(DomainError):
        baran_normal_derivative([0.0, 0.5], [1, 0])
    with pytest.raises(DomainError):
        baran_normal_derivative([0.2, 0.2], [0, 0])
    with pytest.raises(DomainError):
        baran_normal_derivative([0.2, 0.2], [1, 0, 0])


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_pluripotential_factor_bounds_oracle(simplex, n):
    x, y = [1 / 3, 1 / 3], [1.0, 0.0]
    bound = n * baran_normal_derivative(x, y).value
    est = bernstein_oracle(simplex, x, y, n)
    # the oracle over-estimates through grid slack; allow the oracle band
    assert est <= bound * 1.02
    assert bound == pytest.approx(n / best_ellipse_simplex(x, y), rel=1e-3)
