import itertools

import numpy as np
import pytest

from convexcert.lp import EQ, GE, LE, LpProblem, LpStatus, lp_solve
from convexcert.geometry import PointSet, contains_origin
from convexcert.oracles import barycentric_solve
from convexcert.rng import Xoshiro256


def test_box_maximum():
    r = lp_solve(LpProblem([1.0], np.zeros((0, 1)), [], [], [0.0], [1.0], maximize=True))
    assert r.status is LpStatus.OPTIMAL and abs(r.value - 1.0) < 1e-12


def test_infeasible():
    r = lp_solve(LpProblem([0.0], [[1.0], [1.0]], [GE, LE], [1.0, 0.0]))
    assert r.status is LpStatus.INFEASIBLE


def test_unbounded():
    r = lp_solve(LpProblem([1.0, 1.0], [[1.0, -1.0]], [LE], [1.0], maximize=True))
    assert r.status is LpStatus.UNBOUNDED


def test_textbook_optimum():
    # max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18  ->  (2, 6), value 36
    r = lp_solve(LpProblem([3.0, 5.0], [[1, 0], [0, 2], [3, 2.0]], [LE] * 3, [4, 12, 18.0], maximize=True))
    assert r.optimal
    np.testing.assert_allclose(r.x, [2, 6], atol=1e-10)
    assert abs(r.value - 36) < 1e-10


def test_free_and_equality():
    # min x + y with x - y = 1, x, y free but y >= -3  ->  unbounded below? no: x = 1 + y, obj = 1 + 2y, y >= -3
    r = lp_solve(LpProblem([1.0, 1.0], [[1.0, -1.0]], [EQ], [1.0], [-np.inf, -3.0], [np.inf, np.inf]))
    assert r.optimal and abs(r.value - (-5.0)) < 1e-10
    np.testing.assert_allclose(r.x, [-2, -3], atol=1e-10)


def test_degenerate_does_not_cycle():
    # Beale's classic cycling example (Bland's rule must terminate).
    c = [-0.75, 150, -0.02, 6]
    a = [[0.25, -60, -0.04, 9], [0.5, -90, -0.02, 3], [0, 0, 1, 0]]
    r = lp_solve(LpProblem(c, a, [LE] * 3, [0, 0, 1.0]))
    assert r.optimal and abs(r.value - (-0.05)) < 1e-10


def _triangle_oracle(p):
    for size in (1, 2, 3):
        for idx in itertools.combinations(range(len(p)), size):
            w = barycentric_solve(p[list(idx)])
            if w is not None and np.all(w >= -1e-12):
                return True
    return False


@pytest.mark.parametrize("seed", range(40))
def test_membership_lp_matches_triangles(seed):
    g = Xoshiro256(seed)
    p = g.normal_array(6, 2) + g.normal_array(2) * 1.2
    a = np.vstack([p.T, np.ones((1, 6))])
    r = lp_solve(LpProblem(np.zeros(6), a, [EQ] * 3, [0, 0, 1.0]))
    assert (r.status is LpStatus.OPTIMAL) == _triangle_oracle(p)
    assert contains_origin(PointSet(2, p)).inside == _triangle_oracle(p)
