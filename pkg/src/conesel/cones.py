"""Small-dimension polyhedral cone utilities (double description).

Used to locate a point inside a cone spanned by generator vectors and to bound
its distance to the cone boundary through a simplicial cell. Only meant for
dimensions up to 3; the enumeration is combinatorial.
"""
from __future__ import annotations

from itertools import combinations
from typing import Optional

import numpy as np

_TOL = 1e-10


def _unit_rows(M):
    M = np.asarray(M, dtype=float)
    norms = np.linalg.norm(M, axis=1)
    keep = norms > _TOL
    return M[keep] / norms[keep, None]


def _dedupe(rays):
    out = []
    for r in rays:
        if not any(np.linalg.norm(r - q) < 1e-9 for q in out):
            out.append(r)
    return out


def dd_rays(H) -> list:
    """Extreme rays of ``{x : H @ x >= 0}`` by the double description method.

    ``H`` must have full column rank, i.e. the cone must be pointed. Rays are
    returned as unit vectors.
    """
    H = _unit_rows(H)
    k = H.shape[1]
    init = []
    for i in range(H.shape[0]):
        trial = init + [i]
        if np.linalg.matrix_rank(H[trial], tol=1e-9) == len(trial):
            init = trial
        if len(init) == k:
            break
    if len(init) < k:
        raise ValueError("constraint matrix is not of full column rank")
    rays = list(np.linalg.inv(H[init]).T)
    rays = [r / np.linalg.norm(r) for r in rays]
    done = list(init)
    for i in range(H.shape[0]):
        if i in init:
            continue
        h = H[i]
        vals = np.array([h @ r for r in rays])
        pos = [r for r, v in zip(rays, vals) if v > _TOL]
        neg = [(r, v) for r, v in zip(rays, vals) if v < -_TOL]
        new = [r for r, v in zip(rays, vals) if v >= -_TOL]
        vpos = [v for v in vals if v > _TOL]
        Hd = H[done]
        for p, vp in zip(pos, vpos):
            zp = np.abs(Hd @ p) <= 1e-9
            for n, vn in neg:
                common = zp & (np.abs(Hd @ n) <= 1e-9)
                rank = np.linalg.matrix_rank(Hd[common], tol=1e-9) if common.any() else 0
                if rank == k - 2:
                    r = vp * n - vn * p
                    new.append(r / np.linalg.norm(r))
        rays = _dedupe(new)
        done.append(i)
    return rays


def generator_extreme_rays(G) -> Optional[tuple]:
    """Facet normals and extreme rays of ``cone(rows of G)``.

    Returns ``(facets, rays)`` as unit-row arrays, or None when the cone is
    not pointed (contains a line), in which case it has no extreme rays.
    """
    G = np.asarray(G, dtype=float)
    facets = np.array(dd_rays(G))
    k = G.shape[1]
    if facets.size == 0 or np.linalg.matrix_rank(facets, tol=1e-9) < k:
        return None
    rays = np.array(dd_rays(facets))
    return facets, rays


def simplicial_bounds_from_generators(G, point) -> Optional[tuple]:
    """Bounds on the distance from ``point`` to the boundary of ``cone(rows of G)``.

    Finds a simplicial cell ``C_I`` spanned by ``k`` extreme generators that
    contains ``point`` in its interior and is as deep as the whole cone, then
    returns ``(sigma_min(G_I) * nu_min, max_j |g_j| * nu_min, detail)`` where
    ``point = G_I @ nu`` and ``nu_min = min(nu)``. Returns None if the cone is
    not pointed, the point is not strictly interior, or no cell attains the
    cone's boundary distance.
    """
    G = np.asarray(G, dtype=float)
    x = np.asarray(point, dtype=float).reshape(-1)
    k = G.shape[1]
    if k == 0 or G.shape[0] == 0:
        return None
    found = generator_extreme_rays(G)
    if found is None:
        return None
    facets, rays = found
    scale = max(1.0, float(np.linalg.norm(x)))
    depth = float(np.min(facets @ x))
    if depth <= 1e-8 * scale:
        return None

    # represent each extreme direction by the first generator pointing along it
    Gunit = _unit_rows(G)
    norms = np.linalg.norm(G, axis=1)
    nz = np.flatnonzero(norms > _TOL)
    gens = []
    for r in rays:
        hit = nz[np.argmax(Gunit @ r)]
        gens.append(G[hit])
    gens = np.array(gens)

    best = None
    for I in combinations(range(len(gens)), k):
        GI = gens[list(I)].T
        if np.linalg.matrix_rank(GI, tol=1e-9) < k:
            continue
        inv = np.linalg.inv(GI)
        lam = inv @ x
        if np.min(lam) <= 1e-12 * scale:
            continue
        cell_depth = float(np.min(lam / np.linalg.norm(inv, axis=1)))
        if best is None or cell_depth > best[0] + 1e-12:
            best = (cell_depth, I, GI, lam)
    if best is None or abs(best[0] - depth) > 1e-9 * scale:
        return None
    _, I, GI, lam = best
    nu_min = float(np.min(lam))
    m_I = float(np.linalg.svd(GI, compute_uv=False)[-1])
    M_I = float(np.max(np.linalg.norm(GI, axis=0)))
    detail = {"cell": I, "nu": lam, "generators": GI, "distance": depth}
    return m_I * nu_min, M_I * nu_min, detail
