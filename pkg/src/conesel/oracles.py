"""Independent reference computations and random instance generators.

The oracles use scipy's HiGHS LP solver and plain geometry, never the
package's own simplex or cone code, so agreement with them is meaningful.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.optimize import linprog

from .constraints import Configuration, ConstraintSet

ORACLE_TOL = 1e-8
_HIGHS = {"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10}


def slack_lp_optimum(A_cols, b) -> float:
    """``min 1^T s  s.t.  A_cols.T @ u - s <= b,  s >= 0``; zero iff the system is feasible."""
    A_cols = np.asarray(A_cols, dtype=float)
    b = np.asarray(b, dtype=float)
    m, q = A_cols.shape
    if q == 0:
        return 0.0
    G = np.hstack([A_cols.T, -np.eye(q)])
    cost = np.concatenate([np.zeros(m), np.ones(q)])
    bounds = [(None, None)] * m + [(0, None)] * q
    res = linprog(cost, A_ub=G, b_ub=b, bounds=bounds, method="highs", options=_HIGHS)
    if res.status != 0:
        raise RuntimeError(f"oracle LP failed: {res.message}")
    return float(res.fun)


def oracle_feasible(cs: ConstraintSet, P: Configuration | None = None) -> bool:
    bits = np.ones(cs.c, dtype=bool) if P is None else P.bits
    return slack_lp_optimum(cs.A[:, bits], cs.B[bits]) <= ORACLE_TOL


def highs_status(cost, A_ub=None, b_ub=None, A_eq=None, b_eq=None, bounds=None) -> str:
    """'optimal', 'infeasible' or 'unbounded' from two HiGHS feasibility solves.

    HiGHS's own status for the full problem can confuse "unbounded" with
    "infeasible" after presolve, so primal and dual feasibility are decided
    separately, each with a zero objective. ``bounds`` may only hold lower
    bounds (``(lo, None)``) or free variables, which covers every use here.
    """
    cost = np.asarray(cost, dtype=float)
    n = cost.size
    bounds = [(None, None)] * n if bounds is None else bounds
    res = linprog(np.zeros(n), A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq,
                  bounds=bounds, method="highs", options=_HIGHS)
    if res.status == 2:
        return "infeasible"
    if res.status != 0:
        raise RuntimeError(f"oracle LP failed: {res.message}")
    # dual: exists y (free), lam >= 0 with c + E^T y + G^T lam = z,
    # z >= 0 on lower-bounded variables and z = 0 on free ones
    E = np.zeros((0, n)) if A_eq is None else np.asarray(A_eq, dtype=float)
    G = np.zeros((0, n)) if A_ub is None else np.asarray(A_ub, dtype=float)
    ne, ni = E.shape[0], G.shape[0]
    lower = np.array([b[0] is not None for b in bounds])
    M = np.hstack([E.T, G.T])
    if ne + ni == 0:
        dual_ok = bool(np.all(cost[lower] >= 0) and np.all(cost[~lower] == 0))
    else:
        dres = linprog(np.zeros(ne + ni),
                       A_ub=-M[lower] if lower.any() else None,
                       b_ub=cost[lower] if lower.any() else None,
                       A_eq=M[~lower] if (~lower).any() else None,
                       b_eq=-cost[~lower] if (~lower).any() else None,
                       bounds=[(None, None)] * ne + [(0, None)] * ni,
                       method="highs", options=_HIGHS)
        dual_ok = dres.status == 0
    return "optimal" if dual_ok else "unbounded"


def highs_solve(cost, **kw):
    kw.setdefault("bounds", [(None, None)] * len(cost))
    return linprog(cost, method="highs", options=_HIGHS, **kw)


# --- instance generators -----------------------------------------------------

def random_instance(rng, m_range=(1, 4), c_range=(2, 12), p_infeasible=0.3,
                    hard_feasible=False, lim=2.0) -> ConstraintSet:
    """Random ``A`` (m x c) with entries in ``[-lim, lim]`` and ``B`` built around
    a planted point, clipped to the same range.

    With probability ``p_infeasible`` a Farkas certificate is planted: a
    nonnegative combination of some columns vanishes while the same
    combination of ``B`` is negative. With ``hard_feasible`` the hard
    constraints share a strictly feasible point.
    """
    m = int(rng.integers(m_range[0], m_range[1] + 1))
    c = int(rng.integers(c_range[0], c_range[1] + 1))
    A = rng.uniform(-lim, lim, (m, c))
    # plant a feasible point; about a third of the constraints are tight there
    u0 = rng.uniform(-0.5, 0.5, m)
    slack = rng.uniform(0, lim, c) * (rng.random(c) > 0.3)
    B = np.clip(A.T @ u0 + slack, -lim, lim)
    n_hard = int(rng.integers(0, c + 1))
    if hard_feasible:
        n_hard = min(n_hard, c - 1)
        u0 = rng.uniform(-1, 1, m)
        B[:n_hard] = A[:, :n_hard].T @ u0 + rng.uniform(0.05, lim, n_hard)
    if rng.random() < p_infeasible:
        lo = n_hard if hard_feasible else 0
        # at least two columns, at most m + 1 so the certificate is not forced
        avail = c - lo
        if avail >= 2:
            s = int(rng.integers(2, min(avail, m + 1) + 1))
            sup = lo + rng.choice(avail, size=s, replace=False)
            lam = rng.uniform(0.2, 1.0, s)
            last = sup[-1]
            A[:, last] = -(A[:, sup[:-1]] @ lam[:-1]) / lam[-1]
            B[last] = -(B[sup[:-1]] @ lam[:-1] + rng.uniform(0.1, 1.0)) / lam[-1]
            big = float(np.max(np.abs(A[:, last])))
            if big > lim:
                # positive column scaling keeps the constraint set unchanged
                A[:, last] *= lim / big
                B[last] *= lim / big
    return ConstraintSet(A, B, n_hard)


def random_config(rng, cs: ConstraintSet) -> Configuration:
    bits = rng.random(cs.c) < 0.5
    bits[: cs.n_hard] = True
    return Configuration(bits)


def random_k2_cone(rng, c_range=(3, 8), m_max=3):
    """Constraint set whose nullspace has dimension 2, a pointed generator
    cone, and ``BA`` strictly inside it.

    The generators are drawn in an open half-plane, so the cone is pointed.
    ``B`` is a strictly positive combination weight, which puts ``N.T @ B``
    in the interior.
    """
    c = int(rng.integers(c_range[0], c_range[1] + 1))
    m = min(c - 2, m_max)
    c = m + 2
    base = rng.uniform(0, 2 * math.pi)
    width = rng.uniform(0.3, 0.95) * math.pi
    ang = base + rng.uniform(0, width, c)
    G = np.column_stack([np.cos(ang), np.sin(ang)]) * rng.uniform(0.5, 2.0, (c, 1))
    Q, _ = np.linalg.qr(G)  # c x 2, same column space; rows are G rows mapped linearly
    full, _ = np.linalg.qr(np.hstack([Q, rng.standard_normal((c, m))]))
    A = full[:, 2:].T
    B = rng.uniform(0.1, 2.0, c)
    return ConstraintSet(A, B, 0)


def boundary_distance_2d(G, p, n_samples=0, rng=None) -> float:
    """Distance from ``p`` to the boundary of a pointed planar ``cone(rows of G)``.

    The two boundary rays are found from generator angles. The distance to each
    ray is computed exactly; if ``n_samples`` > 0 it is also estimated from
    random points on the rays and the smaller value is returned (sampling can
    only overestimate).
    """
    G = np.asarray(G, dtype=float)
    p = np.asarray(p, dtype=float)
    ang = np.sort(np.mod(np.arctan2(G[:, 1], G[:, 0]), 2 * math.pi))
    gaps = np.diff(np.concatenate([ang, [ang[0] + 2 * math.pi]]))
    i = int(np.argmax(gaps))
    if gaps[i] <= math.pi:
        raise ValueError("cone is not pointed")
    edges = [ang[i], ang[(i + 1) % ang.size]]
    best = math.inf
    for a in edges:
        r = np.array([math.cos(a), math.sin(a)])
        t = max(0.0, float(p @ r))
        best = min(best, float(np.linalg.norm(p - t * r)))
        if n_samples:
            ts = rng.uniform(0, 2 * np.linalg.norm(p) + 1, n_samples)
            best = min(best, float(np.min(np.linalg.norm(p[None] - ts[:, None] * r[None], axis=1))))
    return best
