import numpy as np
import pytest
from scipy.stats import ortho_group

from conesel import checks, oracles
from conesel.cones import dd_rays, simplicial_bounds_from_generators
from conesel.constraints import Configuration, ConstraintSet, nullspace_basis
from conesel.errors import InfeasibleInput
from conesel.feasibility import (farkas_feasible, fc, multiplier_lp, polar_components,
                                 simplicial_bounds)
from conesel.lp import LpStatus

INTERVAL = ConstraintSet([[1.0, -1.0]], [1.0, 1.0])
EMPTY = ConstraintSet([[1.0, -1.0]], [-1.0, -1.0])


def test_farkas_examples():
    assert farkas_feasible(INTERVAL)
    assert not farkas_feasible(EMPTY)
    assert farkas_feasible(ConstraintSet(np.eye(2), [-5.0, -7.0]))


def test_fc_examples():
    cert = fc(INTERVAL, Configuration([1, 1]))
    assert cert.feasible and np.all(cert.nu >= -1e-12)
    nb = nullspace_basis(INTERVAL)
    assert nb.N.T @ cert.nu == pytest.approx(nb.BA)
    assert not fc(EMPTY, Configuration([1, 1]))
    assert fc(EMPTY, Configuration([1, 0]))


def test_nu_is_slack_of_some_input():
    rng = np.random.default_rng(3)
    for _ in range(300):
        cs = oracles.random_instance(rng)
        cert = fc(cs, oracles.random_config(rng, cs))
        if not cert:
            continue
        u, *_ = np.linalg.lstsq(cs.A.T, cs.B - cert.nu, rcond=None)
        assert np.allclose(cs.B - cs.A.T @ u, cert.nu, atol=1e-7)


def test_certificate_partition():
    rng = np.random.default_rng(4)
    for _ in range(300):
        cs = oracles.random_instance(rng)
        P = oracles.random_config(rng, cs)
        cert = fc(cs, P)
        if not cert:
            continue
        parts = np.concatenate([cert.enforced, cert.disregarded_pos, cert.disregarded_neg])
        assert np.array_equal(np.sort(parts), np.arange(cs.c))
        assert np.all(cert.nu[cert.enforced] >= -1e-8)
        assert np.all(cert.nu[cert.disregarded_pos] >= 0)
        assert np.all(cert.nu[cert.disregarded_neg] < 0)


def test_fc_all_ones_matches_farkas():
    rng = np.random.default_rng(5)
    for _ in range(500):
        cs = oracles.random_instance(rng)
        assert bool(fc(cs, cs.all_ones())) == farkas_feasible(cs)


def test_oracle_agreement_small():
    r = checks.check_oracle_agreement(1000, seed=21)
    assert r.passed, r.line()


def test_basis_invariance():
    rng = np.random.default_rng(6)
    tested = 0
    for _ in range(300):
        cs = oracles.random_instance(rng)
        nb = nullspace_basis(cs)
        if nb.k < 2:
            continue
        tested += 1
        Q = ortho_group.rvs(nb.k, random_state=rng)
        nq = nullspace_basis(cs, rotation=Q)
        assert farkas_feasible(cs, nb) == farkas_feasible(cs, nq)
        P = oracles.random_config(rng, cs)
        a, b = fc(cs, P, nb), fc(cs, P, nq)
        assert bool(a) == bool(b)
        if a and a.cost_minimal and b.cost_minimal:
            cost = P.bits - 0.5
            assert cost @ a.nu == pytest.approx(cost @ b.nu, abs=1e-7)
        if farkas_feasible(cs, nb):
            pa = polar_components(cs, nb, with_bounds=False)
            pb = polar_components(cs, nq, with_bounds=False)
            assert pa.optimum == pytest.approx(pb.optimum, abs=1e-7)
    assert tested > 100


def test_multiplier_lp_examples():
    sol = multiplier_lp(INTERVAL)
    assert sol.status is LpStatus.OPTIMAL and sol.objective_value == pytest.approx(0)
    # infeasible set: the multiplier LP is unbounded
    assert multiplier_lp(EMPTY).status is LpStatus.UNBOUNDED


def test_zero_maximizer_small():
    r = checks.check_zero_maximizer(50, seed=22)
    assert r.passed, r.line()


def test_polar_examples():
    assert polar_components(INTERVAL).optimum == pytest.approx(2.0)
    rep = polar_components(ConstraintSet([[1.0, -1.0]], [1.0, 0.0]))
    assert rep.optimum == pytest.approx(1.0)
    rep = polar_components(ConstraintSet(np.eye(2), [1.0, 2.0]))
    assert rep.optimum == 0.0 and np.array_equal(rep.nu_star, np.zeros(2))
    with pytest.raises(InfeasibleInput):
        polar_components(EMPTY)


def test_simplicial_examples():
    lo, hi = simplicial_bounds(INTERVAL)
    assert lo == pytest.approx(2 ** 0.5) and hi == pytest.approx(2 ** 0.5)
    lo, hi, detail = simplicial_bounds_from_generators(np.eye(2), [2.0, 1.0])
    assert (lo, hi) == pytest.approx((1.0, 1.0))
    assert detail["distance"] == pytest.approx(1.0)
    # an extra interior generator does not change the cell
    lo, hi, _ = simplicial_bounds_from_generators(np.array([[1.0, 0], [0, 1], [1, 1]]), [2.0, 1.0])
    assert (lo, hi) == pytest.approx((1.0, 1.0))
    # on the boundary: no bound
    assert simplicial_bounds_from_generators(np.eye(2), [1.0, 0.0]) is None
    assert simplicial_bounds(ConstraintSet(np.eye(2), [1.0, 1.0])) is None


def test_square_cone_centre_has_no_cell():
    # every simplicial cell of a square-based cone has the centre on a face
    G = np.array([[1.0, 1, 1], [1, -1, 1], [-1, 1, 1], [-1, -1, 1]])
    assert simplicial_bounds_from_generators(G, [0.0, 0.0, 1.0]) is None
    # near a facet the nearest cell boundary is that facet again
    assert simplicial_bounds_from_generators(G, [0.8, 0.1, 1.0]) is not None


def test_dd_rays_cube_corner():
    rays = dd_rays(np.eye(3))
    assert len(rays) == 3
    rays = dd_rays(np.array([[1.0, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, -1]]))
    # the extra cut adds facets, so the cone has four extreme rays
    assert len(rays) == 4
    H = np.array([[1.0, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, -1]])
    for r in rays:
        assert np.all(H @ r >= -1e-12)


def test_distance_bounds_small():
    r = checks.check_distance_bounds(60, seed=23)
    assert r.passed, r.line()
