"""Euclidean projection onto a small polyhedron by active-set enumeration."""
from __future__ import annotations

from itertools import combinations

import numpy as np

from .errors import DimensionError, InfeasibleError
from .lp import feas_tol


def _candidates(u_ref, A_cols, b, size):
    """KKT points (and multipliers, index sets) for every independent active set of ``size``."""
    q = A_cols.shape[1]
    idx = np.array(list(combinations(range(q), size)), dtype=int)
    empty = (np.zeros((0, u_ref.shape[0])), np.zeros((0, size)), np.zeros((0, size), dtype=int))
    if idx.size == 0:
        return empty
    G = A_cols[:, idx].transpose(1, 0, 2)  # (n_sets, m, size)
    gram = np.einsum("kmi,kmj->kij", G, G)
    sv = np.linalg.svd(gram, compute_uv=False)
    ok = sv[:, -1] > 1e-12 * np.maximum(1.0, sv[:, 0])
    G, gram, idx = G[ok], gram[ok], idx[ok]
    if not len(idx):
        return empty
    rhs = np.einsum("kmi,m->ki", G, u_ref) - b[idx]
    lam = np.linalg.solve(gram, rhs[..., None])[..., 0]
    u = u_ref[None, :] - np.einsum("kmi,ki->km", G, lam)
    return u, lam, idx


def solve_min_norm_qp(u_ref, A_cols, b, return_multipliers=False):
    """Project ``u_ref`` onto ``{u : A_cols.T @ u <= b}``.

    Every active set of at most ``m`` linearly independent constraints yields a
    candidate point; the projection is the feasible candidate closest to
    ``u_ref``. Exact for ``m <= 3`` at the problem sizes used here.

    Raises InfeasibleError when no candidate is feasible (empty polyhedron).
    With ``return_multipliers`` the KKT multipliers (length q) are returned too.
    """
    u_ref = np.asarray(u_ref, dtype=float).reshape(-1)
    m = u_ref.shape[0]
    A_cols = np.asarray(A_cols, dtype=float).reshape(m, -1)
    b = np.asarray(b, dtype=float).reshape(-1)
    q = A_cols.shape[1]
    if b.shape[0] != q:
        raise DimensionError(f"A_cols has {q} columns but b has {b.shape[0]} entries")
    if m > 3:
        raise DimensionError("active-set enumeration is limited to m <= 3")

    tol = feas_tol(b, u_ref)
    found = []  # (cost, u, multipliers) of feasible candidates
    for size in range(0, min(m, q) + 1):
        if size == 0:
            us = u_ref[None, :]
            lams = np.zeros((1, 0))
            sets = np.zeros((1, 0), dtype=int)
        else:
            us, lams, sets = _candidates(u_ref, A_cols, b, size)
        if not len(us):
            continue
        resid = us @ A_cols - b[None, :]
        feasible = np.all(resid <= tol, axis=1)
        cost = np.sum((us - u_ref[None, :]) ** 2, axis=1)
        for k in np.flatnonzero(feasible):
            mult = np.zeros(q)
            mult[sets[k]] = lams[k]
            found.append((float(cost[k]), us[k], mult))
    if not found:
        raise InfeasibleError("constraint polyhedron is empty")
    best = min(f[0] for f in found)
    near = [f for f in found if f[0] <= best + 1e-12 * max(1.0, best)]
    # at a degenerate vertex several active sets give the same point; prefer
    # one whose multipliers are nonnegative
    dual_ok = [f for f in near if f[2].min(initial=0.0) >= -1e-9]
    _, u, mult = (dual_ok or near)[0]
    if return_multipliers:
        return u.copy(), mult
    return u.copy()
