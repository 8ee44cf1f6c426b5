import itertools

import numpy as np
import pytest

from polyineq.oracle import lp_solve


def test_single_variable_max():
    sol = lp_solve([[1.0], [-1.0]], [3.0, 0.0], [1.0])
    assert sol.ok and sol.objective == pytest.approx(3)
    np.testing.assert_allclose(sol.primal, [3.0])


def test_minimize():
    sol = lp_solve([[1.0], [-1.0]], [3.0, 0.0], [1.0], sense="min")
    assert sol.ok and sol.objective == pytest.approx(0, abs=1e-12)


def test_infeasible_pair():
    sol = lp_solve([[1.0], [-1.0]], [0.0, -1.0], [1.0])
    assert sol.status == "infeasible" and not sol.ok


def test_unbounded():
    sol = lp_solve([[-1.0, 0.0], [0.0, 1.0]], [0.0, 1.0], [1.0, 1.0])
    assert sol.status == "unbounded"
    sol = lp_solve([[-1.0, 0.0], [0.0, 1.0]], [0.0, 1.0], [1.0, 1.0], sense="min")
    assert sol.status == "unbounded" and sol.objective == -np.inf


def test_bad_input():
    with pytest.raises(ValueError):
        lp_solve([[1.0, 2.0]], [1.0], [1.0])
    with pytest.raises(ValueError):
        lp_solve([[np.inf]], [1.0], [1.0])
    with pytest.raises(ValueError):
        lp_solve([[1.0]], [1.0], [1.0], sense="up")


def brute_force(A, b, c):
    best = -np.inf
    for i, j in itertools.combinations(range(len(b)), 2):
        M = A[[i, j]]
        if abs(np.linalg.det(M)) < 1e-12:
            continue
        z = np.linalg.solve(M, b[[i, j]])
        if (A @ z <= b + 1e-9).all():
            best = max(best, float(c @ z))
    return best


def test_against_vertex_enumeration():
    rng = np.random.default_rng(0)
    for _ in range(100):
        m = int(rng.integers(3, 9))
        A = np.vstack([rng.standard_normal((m, 2)), np.eye(2), -np.eye(2)])
        b = np.concatenate([rng.uniform(-0.5, 2, m), 5 * np.ones(4)])
        c = rng.standard_normal(2)
        ref = brute_force(A, b, c)
        sol = lp_solve(A, b, c)
        if ref == -np.inf:
            assert sol.status == "infeasible"
            continue
        assert sol.ok
        assert sol.objective == pytest.approx(ref, rel=1e-9, abs=1e-9)
        assert (A @ sol.primal <= b + 1e-8 * (1 + np.abs(b))).all()


def test_determinism():
    rng = np.random.default_rng(1)
    A = rng.standard_normal((400, 6))
    b = rng.uniform(0.5, 1.5, 400)
    c = rng.standard_normal(6)
    s1, s2 = lp_solve(A, b, c), lp_solve(A, b, c)
    assert s1.ok
    assert s1.objective == s2.objective and s1.iterations == s2.iterations
    assert np.array_equal(s1.primal, s2.primal)


def test_degenerate_vertex():
    # many constraints active at the optimum (cycling-prone)
    k = np.arange(1, 8, dtype=float)
    A = np.vstack([np.outer(k, [1, 1]), np.outer(k, [1, 2]), [[-1, 0], [0, -1]]])
    b = np.concatenate([k, k, [0, 0]])
    sol = lp_solve(A, b, [1.0, 1.0])
    assert sol.ok and sol.objective == pytest.approx(1)


def test_highly_degenerate_dual():
    # maximize p(g0) subject to |p(g)| <= 1 on a grid containing g0 itself:
    # the dual optimum has a single nonzero weight among many basic variables
    from polyineq.oracle import eval_matrix
    t = np.linspace(0, 1, 41)
    G = np.array([(a, b) for a in t for b in t if a + b <= 1 + 1e-12])
    Phi = eval_matrix(G, 4)
    A = np.vstack([Phi, -Phi])
    b = np.ones(2 * len(G))
    sol = lp_solve(A, b, eval_matrix([[0.5, 0.5]], 4)[0])
    assert sol.ok and sol.objective == pytest.approx(1, abs=1e-9)
