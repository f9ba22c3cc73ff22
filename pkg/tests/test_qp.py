import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conesel.errors import DimensionError, InfeasibleError
from conesel.qp import solve_min_norm_qp


def test_unconstrained():
    u = solve_min_norm_qp(np.zeros(2), np.zeros((2, 0)), np.zeros(0))
    assert np.array_equal(u, np.zeros(2))


def test_single_halfspace():
    u = solve_min_norm_qp(np.array([2.0, 0.0]), np.array([[1.0], [0.0]]), np.array([1.0]))
    assert u == pytest.approx([1.0, 0.0])


def test_triangle_projection_vs_grid():
    A = np.array([[1.0, 0.0, 1.0], [0.0, 1.0, 1.0]])
    b = np.ones(3)
    u_ref = np.array([2.0, 2.0])
    u, lam = solve_min_norm_qp(u_ref, A, b, return_multipliers=True)
    assert u == pytest.approx([0.5, 0.5], abs=1e-12)
    assert lam == pytest.approx([0.0, 0.0, 1.5])
    # dense grid over the relevant part of the polytope
    g = np.arange(-1.0, 1.0 + 1e-9, 1e-3)
    X, Y = np.meshgrid(g, g)
    pts = np.column_stack([X.ravel(), Y.ravel()])
    pts = pts[np.all(pts @ A <= b + 1e-12, axis=1)]
    best = pts[np.argmin(np.sum((pts - u_ref) ** 2, axis=1))]
    assert np.linalg.norm(best - u) <= 2e-3


def test_box_clamp():
    A = np.hstack([np.eye(2), -np.eye(2)])
    u = solve_min_norm_qp(np.array([3.0, 0.0]), A, np.ones(4))
    assert u == pytest.approx([1.0, 0.0])


def test_infeasible_and_dimension():
    with pytest.raises(InfeasibleError):
        solve_min_norm_qp(np.zeros(1), np.array([[1.0, -1.0]]), np.array([-1.0, -1.0]))
    with pytest.raises(DimensionError):
        solve_min_norm_qp(np.zeros(4), np.zeros((4, 1)), np.zeros(1))


def _random_feasible(rng):
    m = int(rng.integers(1, 4))
    q = int(rng.integers(0, 9))
    A = rng.uniform(-2, 2, (m, q))
    u0 = rng.uniform(-1, 1, m)
    b = A.T @ u0 + rng.uniform(0, 1, q) * (rng.random(q) > 0.3)
    return rng.uniform(-3, 3, m), A, b


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_local_optimality(seed):
    rng = np.random.default_rng(seed)
    u_ref, A, b = _random_feasible(rng)
    u = solve_min_norm_qp(u_ref, A, b)
    assert np.all(A.T @ u - b <= 1e-8 * max(1.0, np.abs(b).max(initial=0)))
    cost = np.sum((u - u_ref) ** 2)
    d = rng.standard_normal((100, u.size))
    d *= 1e-4 * rng.random((100, 1)) / np.linalg.norm(d, axis=1, keepdims=True)
    trial = u + d
    feas = np.all(trial @ A <= b, axis=1)
    costs = np.sum((trial - u_ref) ** 2, axis=1)
    assert np.all(costs[feas] >= cost - 1e-12)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_kkt(seed):
    rng = np.random.default_rng(seed)
    u_ref, A, b = _random_feasible(rng)
    u, lam = solve_min_norm_qp(u_ref, A, b, return_multipliers=True)
    assert np.all(lam >= -1e-9)
    # stationarity of |u - u_ref|^2 / 2 + lam^T (A^T u - b)
    assert np.allclose(u - u_ref + A @ lam, 0, atol=1e-8)
    assert np.allclose(lam * (A.T @ u - b), 0, atol=1e-8)


def test_deterministic():
    rng = np.random.default_rng(5)
    for _ in range(50):
        args = _random_feasible(rng)
        assert np.array_equal(solve_min_norm_qp(*args), solve_min_norm_qp(*args))
