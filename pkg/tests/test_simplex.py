import itertools
import math
import random

import numpy as np
import pytest

from catbound.simplex import (DenseLP, INFEASIBLE, OPTIMAL, UNBOUNDED, solve,
                              _solve_primal)


def brute_force_max(c, A, b):
    """Vertex-enumeration oracle for bounded LPs: try every n-subset of the
    active-constraint candidates (rows plus x_j >= 0), keep feasible basic
    points, return (feasible?, best objective)."""
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    m, n = A.shape
    rows = np.vstack([A, -np.eye(n)])
    rhs = np.concatenate([b, np.zeros(n)])
    best = None
    for combo in itertools.combinations(range(m + n), n):
        M = rows[list(combo)]
        if abs(np.linalg.det(M)) < 1e-9:
            continue
        x = np.linalg.solve(M, rhs[list(combo)])
        if (rows @ x <= rhs + 1e-7).all():
            val = float(c @ x)
            if best is None or val > best:
                best = val
    return best is not None, best


def test_single_constraint_example():
    lp = DenseLP([1.0], [[1.0]], [math.log(4)])
    res = solve(lp)
    assert res.status == OPTIMAL
    assert res.optimum == pytest.approx(math.log(4), abs=1e-12)
    assert res.dual[0] == pytest.approx(1.0, abs=1e-12)
    assert res.primal[0] == pytest.approx(math.log(4), abs=1e-12)


def test_unbounded_direction():
    lp = DenseLP([1.0, 1.0], [[1.0, 0.0]], [2.0])
    assert solve(lp).status == UNBOUNDED


def test_infeasible():
    # x <= -1 with x >= 0
    lp = DenseLP([1.0], [[1.0]], [-1.0])
    assert solve(lp).status == INFEASIBLE


def test_phase_one_negative_rhs():
    # x >= 1 encoded as -x <= -1, maximize -x => optimum -1 at x = 1
    lp = DenseLP([-1.0], [[-1.0]], [-1.0])
    res = solve(lp)
    assert res.status == OPTIMAL
    assert res.optimum == pytest.approx(-1.0, abs=1e-9)
    assert res.primal[0] == pytest.approx(1.0, abs=1e-9)


def test_two_variable_hand_case():
    # max x + 2y st x + y <= 4, y <= 3  => (1, 3) value 7
    lp = DenseLP([1.0, 2.0], [[1.0, 1.0], [0.0, 1.0]], [4.0, 3.0])
    res = solve(lp)
    assert res.status == OPTIMAL
    assert res.optimum == pytest.approx(7.0, abs=1e-9)
    assert res.primal == pytest.approx([1.0, 3.0], abs=1e-9)
    # dual: y1 = 1 (binding sum row), y2 = 1
    assert res.dual == pytest.approx([1.0, 1.0], abs=1e-9)


def test_random_lps_against_vertex_enumeration():
    rng = random.Random(1234)
    checked = 0
    for _ in range(120):
        n = rng.randrange(2, 5)
        m = rng.randrange(2, 8)
        A = [[float(rng.randrange(-3, 4)) for _ in range(n)] for _ in range(m)]
        # mostly nonnegative rhs (feasible at 0), sometimes negative (phase 1)
        b = [float(rng.choice([0, 1, 2, 3, 3, -1])) for _ in range(m)]
        c = [float(rng.randrange(-3, 4)) for _ in range(n)]
        # box rows keep the region bounded so every optimum is at a vertex
        A += [[1.0 if j == i else 0.0 for j in range(n)] for i in range(n)]
        b += [4.0] * n
        lp = DenseLP(np.array(c), np.array(A), np.array(b))
        res = solve(lp)
        feasible, best = brute_force_max(c, A, b)
        if not feasible:
            assert res.status == INFEASIBLE
            continue
        assert res.status == OPTIMAL
        assert res.optimum == pytest.approx(best, abs=1e-6)
        # primal feasibility
        assert (np.array(A) @ res.primal <= np.array(b) + 1e-8).all()
        assert (res.primal >= -1e-9).all()
        # dual feasibility and strong duality
        assert (res.dual >= -1e-12).all()
        assert (np.array(A).T @ res.dual >= np.array(c) - 1e-8).all()
        assert float(res.dual @ np.array(b)) == pytest.approx(
            res.optimum, abs=1e-7 * (1 + abs(res.optimum)))
        checked += 1
    assert checked > 60


def test_complementary_slackness():
    rng = random.Random(77)
    for _ in range(30):
        n = rng.randrange(2, 5)
        m = rng.randrange(2, 6)
        A = np.array([[float(rng.randrange(-2, 4)) for _ in range(n)]
                      for _ in range(m)] + [[1.0 if j == i else 0.0
                                             for j in range(n)]
                                            for i in range(n)])
        b = np.array([float(rng.randrange(0, 4)) for _ in range(m)] + [5.0] * n)
        c = np.array([float(rng.randrange(-1, 4)) for _ in range(n)])
        res = solve(DenseLP(c, A, b))
        assert res.status == OPTIMAL
        slack = b - A @ res.primal
        assert (np.abs(res.dual * slack) <= 1e-6 * (1 + np.abs(b))).all()


def test_deterministic_repeat():
    rng = random.Random(5)
    A = np.array([[float(rng.randrange(-3, 4)) for _ in range(4)] for _ in range(8)])
    b = np.array([float(rng.randrange(0, 4)) for _ in range(8)])
    c = np.array([float(rng.randrange(-3, 4)) for _ in range(4)])
    r1 = solve(DenseLP(c.copy(), A.copy(), b.copy()))
    r2 = solve(DenseLP(c.copy(), A.copy(), b.copy()))
    assert r1.status == r2.status
    assert r1.optimum == r2.optimum
    assert np.array_equal(r1.primal, r2.primal)
    assert np.array_equal(r1.dual, r2.dual)


def test_degenerate_ties_terminate():
    # many identical rows through the origin force degenerate pivots
    n = 3
    A = np.array([[1.0, 1.0, 1.0]] * 6 + [[1.0, 0.0, 0.0]] * 4 + [[-1.0, 1.0, 0.0]] * 4)
    b = np.zeros(14)
    c = np.array([1.0, 2.0, -1.0])
    res = solve(DenseLP(c, A, b))
    assert res.status == OPTIMAL
    assert res.optimum == pytest.approx(0.0, abs=1e-9)


def test_dual_route_matches_direct_pivoting():
    rng = random.Random(9)
    n = 6
    m = 60  # forces the transposed (dual) route inside solve()
    A = np.array([[float(rng.randrange(-2, 4)) for _ in range(n)] for _ in range(m)])
    b = np.array([float(rng.randrange(0, 5)) for _ in range(m)])
    c = np.array([float(rng.randrange(0, 4)) for _ in range(n)])
    via_dual = solve(DenseLP(c, A, b))
    direct = _solve_primal(DenseLP(c, A, b))
    assert via_dual.status == direct.status == OPTIMAL
    assert via_dual.optimum == pytest.approx(direct.optimum, rel=1e-9)
    assert (A @ via_dual.primal <= b + 1e-8).all()
    assert (A.T @ via_dual.dual >= c - 1e-8).all()


def test_invalid_lp_rejected():
    with pytest.raises(ValueError):
        DenseLP([1.0], [[np.inf]], [1.0])
    with pytest.raises(ValueError):
        DenseLP([1.0, 2.0], [[1.0]], [1.0])
    with pytest.raises(ValueError):
        DenseLP([1.0], np.zeros((0, 1)), np.zeros(0))
