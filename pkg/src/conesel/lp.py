"""Dense two-phase simplex with exact status classification.

Problems are stated as

    minimize    c @ x
    subject to  E @ x == f
                G @ x <= h
                x >= var_lower      (entries may be -inf, i.e. free)

and are converted to standard form internally. Pivoting uses Bland's rule
(lowest eligible index enters, lowest basic index leaves on ratio ties), so the
solver is deterministic and cannot cycle.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DimensionError, NonFiniteError

TOL_FEAS = 1e-8
_TOL_PIV = 1e-9
_TOL_RC = 1e-9


def feas_tol(*arrays) -> float:
    """Feasibility tolerance scaled by the largest magnitude among ``arrays``."""
    scale = 1.0
    for a in arrays:
        a = np.asarray(a, dtype=float)
        if a.size:
            scale = max(scale, float(np.max(np.abs(a))))
    return TOL_FEAS * scale


class LpStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


def _as_matrix(a, n, name):
    if a is None:
        return np.zeros((0, n))
    a = np.array(a, dtype=float)
    if a.ndim == 1 and a.size == 0:
        a = a.reshape(0, n)
    if a.ndim != 2 or a.shape[1] != n:
        raise DimensionError(f"{name} must have shape (rows, {n}), got {a.shape}")
    return a


def _as_vector(v, n, name):
    if v is None:
        v = np.zeros(n)
    v = np.array(v, dtype=float).reshape(-1)
    if v.shape != (n,):
        raise DimensionError(f"{name} must have length {n}, got {v.shape[0]}")
    return v


@dataclass(frozen=True)
class LpProblem:
    objective: np.ndarray
    eq_lhs: Optional[np.ndarray] = None
    eq_rhs: Optional[np.ndarray] = None
    ineq_lhs: Optional[np.ndarray] = None
    ineq_rhs: Optional[np.ndarray] = None
    # None means every variable is free.
    var_lower: Optional[np.ndarray] = None

    def __post_init__(self):
        c = np.array(self.objective, dtype=float).reshape(-1)
        n = c.shape[0]
        E = _as_matrix(self.eq_lhs, n, "eq_lhs")
        f = _as_vector(self.eq_rhs, E.shape[0], "eq_rhs")
        G = _as_matrix(self.ineq_lhs, n, "ineq_lhs")
        h = _as_vector(self.ineq_rhs, G.shape[0], "ineq_rhs")
        if self.var_lower is None:
            lo = np.full(n, -np.inf)
        else:
            lo = _as_vector(self.var_lower, n, "var_lower")
        for name, arr in (("objective", c), ("eq_lhs", E), ("eq_rhs", f),
                          ("ineq_lhs", G), ("ineq_rhs", h)):
            if not np.all(np.isfinite(arr)):
                raise NonFiniteError(f"{name} contains non-finite entries")
        if np.any(np.isnan(lo)) or np.any(lo == np.inf):
            raise NonFiniteError("var_lower entries must be finite or -inf")
        for name, arr in (("objective", c), ("eq_lhs", E), ("eq_rhs", f),
                          ("ineq_lhs", G), ("ineq_rhs", h), ("var_lower", lo)):
            object.__setattr__(self, name, arr)

    @property
    def n_vars(self) -> int:
        return self.objective.shape[0]


@dataclass(frozen=True)
class LpSolution:
    status: LpStatus
    x: Optional[np.ndarray] = None
    objective_value: Optional[float] = None
    unbounded_ray: Optional[np.ndarray] = None
    # Feasible vertex from which the ray leaves; set only when unbounded.
    ray_origin: Optional[np.ndarray] = None
    # Lagrange multipliers (>= 0 for inequalities); set only when optimal.
    duals_ineq: Optional[np.ndarray] = None
    duals_eq: Optional[np.ndarray] = None
    iterations: int = field(default=0, compare=False)

    @property
    def optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


class _Tableau:
    """Standard-form tableau ``[A | b]`` with one or two objective rows below."""

    def __init__(self, A, b, basis, costs):
        r, n = A.shape
        self.n_rows = r
        self.T = np.zeros((r + len(costs), n + 1))
        self.T[:r, :n] = A
        self.T[:r, n] = b
        self.basis = list(basis)
        for k, cost in enumerate(costs):
            row = self.T[r + k]
            row[:n] = cost
            cb = cost[self.basis]
            row[:] -= cb @ self.T[:r]
        self.iterations = 0

    def pivot(self, r, j):
        T = self.T
        T[r] /= T[r, j]
        col = T[:, j].copy()
        col[r] = 0.0
        T -= np.outer(col, T[r])
        self.basis[r] = j
        self.iterations += 1

    def run(self, obj_row, allowed):
        """Bland iterations on objective row ``obj_row``; returns the unbounded column or None."""
        T = self.T
        r = self.n_rows
        max_iter = 50 * (T.shape[0] + T.shape[1]) + 1000
        while True:
            if self.iterations > max_iter:
                raise RuntimeError("simplex iteration limit exceeded")
            rc = T[r + obj_row, :-1]
            cand = np.flatnonzero((rc < -_TOL_RC) & allowed)
            if cand.size == 0:
                return None
            j = int(cand[0])
            colj = T[:r, j]
            rows = np.flatnonzero(colj > _TOL_PIV)
            if rows.size == 0:
                return j
            ratios = T[rows, -1] / colj[rows]
            best = ratios.min()
            ties = rows[ratios <= best + 1e-12 * (1.0 + abs(best))]
            leave = min(ties, key=lambda i: self.basis[i])
            self.pivot(int(leave), j)

    def drop_row(self, i):
        self.T = np.delete(self.T, i, axis=0)
        del self.basis[i]
        self.n_rows -= 1


def solve_lp(p: LpProblem) -> LpSolution:
    """Solve ``p`` and classify it as optimal, infeasible or unbounded."""
    n = p.n_vars
    lo = p.var_lower
    finite = np.isfinite(lo)
    shift = np.where(finite, lo, 0.0)

    # column map: original var -> (plus column, minus column or -1)
    plus = np.empty(n, dtype=int)
    minus = np.full(n, -1, dtype=int)
    k = 0
    for j in range(n):
        plus[j] = k
        k += 1
        if not finite[j]:
            minus[j] = k
            k += 1
    n_split = k

    def split(M):
        out = np.zeros((M.shape[0], n_split))
        out[:, plus] = M
        free = minus >= 0
        out[:, minus[free]] = -M[:, free]
        return out

    E, G = p.eq_lhs, p.ineq_lhs
    n_eq, n_in = E.shape[0], G.shape[0]
    rows = n_eq + n_in
    M = np.zeros((rows, n_split + n_in))
    M[:n_eq, :n_split] = split(E)
    M[n_eq:, :n_split] = split(G)
    M[n_eq:, n_split:] = np.eye(n_in)
    rhs = np.concatenate([p.eq_rhs - E @ shift, p.ineq_rhs - G @ shift])
    cost = np.zeros(M.shape[1])
    cost[:n_split] = split(p.objective[None, :])[0]

    sign = np.where(rhs < 0, -1.0, 1.0)
    M_signed = M * sign[:, None]
    b = rhs * sign

    # slack columns whose row was not flipped start basic; others need artificials
    basis = []
    art_rows = []
    for i in range(rows):
        if i >= n_eq and sign[i] > 0:
            basis.append(n_split + (i - n_eq))
        else:
            basis.append(None)
            art_rows.append(i)
    n_std = M.shape[1]
    n_art = len(art_rows)
    A = np.zeros((rows, n_std + n_art))
    A[:, :n_std] = M_signed
    for a, i in enumerate(art_rows):
        A[i, n_std + a] = 1.0
        basis[i] = n_std + a
    cost1 = np.zeros(n_std + n_art)
    cost1[n_std:] = 1.0
    cost2 = np.concatenate([cost, np.zeros(n_art)])

    tab = _Tableau(A, b, basis, [cost1, cost2])
    row_ids = list(range(rows))
    tol = feas_tol(b)

    if n_art:
        allowed = np.ones(n_std + n_art, dtype=bool)
        tab.run(0, allowed)
        if -tab.T[tab.n_rows, -1] > tol:
            return LpSolution(LpStatus.INFEASIBLE, iterations=tab.iterations)
        # drive remaining (zero-level) artificials out of the basis
        i = 0
        while i < tab.n_rows:
            if tab.basis[i] >= n_std:
                row = tab.T[i, :n_std]
                nz = np.flatnonzero(np.abs(row) > _TOL_PIV)
                if nz.size:
                    tab.pivot(i, int(nz[0]))
                    i += 1
                else:
                    tab.drop_row(i)
                    del row_ids[i]
            else:
                i += 1
        tab.T = np.delete(tab.T, np.s_[n_std:n_std + n_art], axis=1)
    # from here on the tableau has only standard columns
    tab.T = np.delete(tab.T, tab.n_rows, axis=0)  # phase-1 objective row

    unbounded_col = None
    if np.any(cost != 0.0):
        unbounded_col = tab.run(0, np.ones(n_std, dtype=bool))

    y = np.zeros(n_std)
    y[tab.basis] = tab.T[:tab.n_rows, -1]
    y = np.maximum(y, 0.0)

    def to_x(v):
        out = v[plus].copy()
        free = minus >= 0
        out[free] -= v[minus[free]]
        return out

    x = to_x(y) + shift
    if unbounded_col is not None:
        d = np.zeros(n_std)
        d[unbounded_col] = 1.0
        d[tab.basis] = -tab.T[:tab.n_rows, unbounded_col]
        return LpSolution(LpStatus.UNBOUNDED, unbounded_ray=to_x(d), ray_origin=x,
                          iterations=tab.iterations)

    # simplex multipliers on the surviving (sign-adjusted) rows
    Bmat = M_signed[np.ix_(row_ids, tab.basis)]
    pi_rows = np.linalg.lstsq(Bmat.T, cost[tab.basis], rcond=None)[0]
    pi = np.zeros(rows)
    pi[row_ids] = pi_rows * sign[row_ids]
    return LpSolution(
        LpStatus.OPTIMAL,
        x=x,
        objective_value=float(p.objective @ x),
        duals_eq=-pi[:n_eq],
        duals_ineq=-pi[n_eq:],
        iterations=tab.iterations,
    )
