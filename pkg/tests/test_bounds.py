import math

import numpy as np
import pytest

from polyineq.bernstein import bernstein_bound, ellipse_constant, ridge_constant
from polyineq.bodies import Ball, Box, HPolytope, StandardSimplex
from polyineq.errors import DomainError
from polyineq.geometry import alpha, maximal_chord

from conftest import random_hull, simplex_points

CENTROID = [1 / 3, 1 / 3]


def test_centroid_factors_coincide(simplex):
    e = bernstein_bound("ellipse", 1, simplex, CENTROID, [1, 0])
    k = bernstein_bound("kroo_revesz_dir", 1, simplex, CENTROID, [1, 0])
    assert e == pytest.approx(math.sqrt(6), rel=1e-12)
    assert k == pytest.approx(2 / math.sqrt(2 / 3), rel=1e-9)
    assert e == pytest.approx(k, rel=1e-9)


def test_bounds_scale_with_degree(simplex):
    for kind in ("ellipse", "kroo_revesz_dir"):
        one = bernstein_bound(kind, 1, simplex, [0.2, 0.3], [0.6, 0.8])
        assert bernstein_bound(kind, 7, simplex, [0.2, 0.3], [0.6, 0.8]) == pytest.approx(7 * one)
    g1 = bernstein_bound("kroo_revesz_grad", 1, simplex, [0.2, 0.3])
    g5 = bernstein_bound("kroo_revesz_grad", 5, simplex, [0.2, 0.3])
    assert g5 == pytest.approx(tuple(5 * v for v in g1))


def test_ellipse_below_kroo_revesz_on_simplex(simplex):
    rng = np.random.default_rng(10)
    pts = simplex_points(rng, 1000, margin=1e-3)
    th = rng.uniform(0, 2 * np.pi, 1000)
    worst = math.inf
    for x, t in zip(pts, th):
        y = [math.cos(t), math.sin(t)]
        e = bernstein_bound("ellipse", 1, simplex, x, y)
        k = bernstein_bound("kroo_revesz_dir", 1, simplex, x, y)
        worst = min(worst, k - e)
    assert worst >= -1e-9


def test_conjecture_on_interval_is_classical():
    I = Box([-1], [1])
    for n in range(1, 6):
        assert bernstein_bound("conjecture", n, I, [0.0]) == pytest.approx(n)
    # alpha(0) = 0 and w = 2
    assert bernstein_bound("conjecture", 3, I, [0.5]) == pytest.approx(3 / math.sqrt(1 - 0.25))


def test_gradient_kinds_on_simplex(simplex):
    x = [0.2, 0.3]
    a = alpha(simplex, x).alpha
    w = 1 / math.sqrt(2)
    g = bernstein_bound("kroo_revesz_grad", 2, simplex, x)
    assert g == pytest.approx((4 / (w * math.sqrt(1 - a)), 4 * math.sqrt(2) / (w * math.sqrt(1 - a * a))))
    assert bernstein_bound("conjecture", 2, simplex, x) == pytest.approx(4 / (w * math.sqrt(1 - a * a)))


@pytest.mark.parametrize("kwargs", [dict(kind="bogus", n=1), dict(kind="ellipse", n=0),
                                    dict(kind="ellipse", n=1, y=None),
                                    dict(kind="ellipse", n=1.5, y=[1, 0]),
                                    dict(kind="conjecture", n=1, x=[0.7, 0.7])])
def test_bound_errors(simplex, kwargs):
    kw = dict(x=[0.2, 0.2], y=[1, 0])
    kw.update(kwargs)
    with pytest.raises(DomainError):
        bernstein_bound(kw["kind"], kw["n"], simplex, kw["x"], kw["y"])


def test_ellipse_constant_dispatch(simplex, triangle_h):
    x, y = [0.25, 0.4], [0.6, -0.8]
    assert ellipse_constant(simplex, x, y) == pytest.approx(ellipse_constant(triangle_h, x, y),
                                                            rel=1e-6)


# -- ridge constant -----------------------------------------------------------

def test_ridge_at_centroid(simplex):
    r = ridge_constant(simplex, CENTROID, [1, 0])
    assert r == pytest.approx(3 / math.sqrt(2), rel=1e-9)
    assert r == pytest.approx(2 / (maximal_chord(simplex, [1, 0]) * math.sqrt(1 - 1 / 9)), rel=1e-9)


def test_converse_inequality_at_centroid(simplex):
    inv_e = 1 / ellipse_constant(simplex, CENTROID, [1, 0])
    r = ridge_constant(simplex, CENTROID, [1, 0])
    assert inv_e == pytest.approx(math.sqrt(6))
    assert math.sqrt(2) * r == pytest.approx(3)
    assert inv_e <= math.sqrt(2) * r


def test_ridge_on_interval():
    assert ridge_constant(Box([-1], [1]), [0.0], [1.0]) == pytest.approx(1)
    # 1/sqrt(1 - x^2) in general
    assert ridge_constant(Box([-1], [1]), [0.6], [-1.0]) == pytest.approx(1.25)


def test_ridge_is_even_in_direction(simplex):
    x = [0.15, 0.6]
    assert ridge_constant(simplex, x, [0.6, 0.8]) == pytest.approx(
        ridge_constant(simplex, x, [-0.6, -0.8]), rel=1e-9)


def _bodies():
    rng = np.random.default_rng(12)
    return [StandardSimplex(2), Box([-1, -1], [1, 1]), Ball([0, 0], 1), random_hull(rng),
            HPolytope([[-1, 0], [0, -1], [1, 2]], [0, 0, 1])]


@pytest.mark.parametrize("K", _bodies())
def test_ridge_chain_and_upper_bound(K):
    rng = np.random.default_rng(13)
    lo, hi = K.bounding_box()
    checked = 0
    while checked < 12:
        x = lo + (hi - lo) * rng.random(2)
        if K.margin(x) <= 0.02:
            continue
        y = rng.standard_normal(2)
        y /= np.linalg.norm(y)
        r = ridge_constant(K, x, y)
        a = alpha(K, x).alpha
        assert r <= 2 / (maximal_chord(K, y) * math.sqrt(1 - a * a)) + 1e-8
        assert r <= 1 / ellipse_constant(K, x, y) + 1e-6
        checked += 1


def test_ridge_three_dimensional_simplex():
    K = StandardSimplex(3)
    x = np.array([0.25, 0.25, 0.25])
    y = np.array([1.0, 0, 0])
    r = ridge_constant(K, x, y)
    # facet-normal candidates give a lower bound; the chain an upper bound
    a = alpha(K, x).alpha
    assert r <= 2 / (maximal_chord(K, y) * math.sqrt(1 - a * a)) + 1e-8
    assert r <= 1 / ellipse_constant(K, x, y) + 1e-6
    assert r >= 1 / (math.sqrt(3) * ellipse_constant(K, x, y)) - 1e-9


def test_ridge_errors(simplex):
    with pytest.raises(DomainError):
        ridge_constant(simplex, [0.0, 0.5], [1, 0])
    with pytest.raises(DomainError):
        ridge_constant(simplex, [0.2, 0.2], [1, 1])
