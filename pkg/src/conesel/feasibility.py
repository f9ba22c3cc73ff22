"""Nullspace feasibility tests for linear inequality systems.

For ``A.T @ u <= B`` with nullspace basis ``N`` of ``A`` and ``BA = N.T @ B``:

* the system is nonempty iff ``{nu >= 0 : N.T @ nu = BA}`` is nonempty;
* a configuration ``P`` is feasible iff the LP

      minimize (P - 1/2)^T nu   s.t.  N.T @ nu = BA,  nu_i >= 0 for enforced i

  is feasible (disregarded components are free).

Any ``nu`` meeting those constraints equals ``B - A.T @ u`` for some input
``u``, so its sign pattern says which constraints that ``u`` satisfies.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .cones import simplicial_bounds_from_generators
from .constraints import Configuration, ConstraintSet, NullspaceBasis, nullspace_basis
from .errors import InfeasibleInput
from .lp import LpProblem, LpSolution, LpStatus, solve_lp


@dataclass(frozen=True)
class FeasibilityCertificate:
    feasible: bool
    nu: Optional[np.ndarray] = None
    enforced: np.ndarray = np.zeros(0, dtype=int)
    disregarded_pos: np.ndarray = np.zeros(0, dtype=int)
    disregarded_neg: np.ndarray = np.zeros(0, dtype=int)
    # False when the cost was unbounded and nu is only a feasible point.
    cost_minimal: bool = True

    def __bool__(self):
        return self.feasible


@dataclass(frozen=True)
class PolarConeReport:
    nu_star: np.ndarray
    optimum: float
    nu_min_enforced: float
    dist_lower: Optional[float] = None
    dist_upper: Optional[float] = None


def _basis(cs, basis):
    return nullspace_basis(cs) if basis is None else basis


def farkas_feasible(cs: ConstraintSet, basis: Optional[NullspaceBasis] = None) -> bool:
    """True iff ``{u : A.T @ u <= B}`` is nonempty."""
    nb = _basis(cs, basis)
    if nb.k == 0:
        return True
    sol = solve_lp(LpProblem(np.zeros(cs.c), eq_lhs=nb.N.T, eq_rhs=nb.BA,
                             var_lower=np.zeros(cs.c)))
    return sol.status is not LpStatus.INFEASIBLE


def multiplier_lp(cs: ConstraintSet, basis: Optional[NullspaceBasis] = None) -> LpSolution:
    """Solve ``max -BA^T mu  s.t.  N @ mu >= 0`` (posed as a minimization).

    Bounded exactly when the constraint set is feasible; the optimum is then 0
    with ``mu = 0`` among the maximizers.
    """
    nb = _basis(cs, basis)
    return solve_lp(LpProblem(nb.BA, ineq_lhs=-nb.N, ineq_rhs=np.zeros(cs.c)))


def fc(cs: ConstraintSet, P: Configuration,
       basis: Optional[NullspaceBasis] = None) -> FeasibilityCertificate:
    """Feasibility check of configuration ``P``.

    Returns the cost-minimizing ``nu`` when the LP has a finite optimum. When
    the cost is unbounded below the problem is still feasible; the vertex the
    simplex stopped at is returned instead and ``cost_minimal`` is False.
    """
    if len(P) != cs.c:
        raise ValueError(f"configuration has {len(P)} bits, expected {cs.c}")
    nb = _basis(cs, basis)
    bits = P.bits
    lower = np.where(bits, 0.0, -np.inf)
    cost = bits.astype(float) - 0.5
    sol = solve_lp(LpProblem(cost, eq_lhs=nb.N.T, eq_rhs=nb.BA, var_lower=lower))
    if sol.status is LpStatus.INFEASIBLE:
        return FeasibilityCertificate(False)
    if sol.status is LpStatus.OPTIMAL:
        nu, minimal = sol.x, True
    else:
        nu, minimal = sol.ray_origin, False
    return _certificate(nu, bits, minimal)


def _certificate(nu, bits, minimal=True):
    idx = np.arange(bits.shape[0])
    off = ~bits
    return FeasibilityCertificate(
        True,
        nu=nu,
        enforced=idx[bits],
        disregarded_pos=idx[off & (nu >= 0)],
        disregarded_neg=idx[off & (nu < 0)],
        cost_minimal=minimal,
    )


def polar_components(cs: ConstraintSet, basis: Optional[NullspaceBasis] = None,
                     with_bounds: bool = True) -> PolarConeReport:
    """Minimum-sum nonnegative ``nu`` with ``N.T @ nu = BA``.

    Raises InfeasibleInput if the constraint set is empty. Distance bounds are
    attached when ``simplicial_bounds`` can produce them.
    """
    nb = _basis(cs, basis)
    if nb.k == 0:
        nu = np.zeros(cs.c)
    else:
        sol = solve_lp(LpProblem(np.ones(cs.c), eq_lhs=nb.N.T, eq_rhs=nb.BA,
                                 var_lower=np.zeros(cs.c)))
        if sol.status is LpStatus.INFEASIBLE:
            raise InfeasibleInput("constraint set is infeasible")
        nu = sol.x
    bounds = simplicial_bounds(cs, nb) if with_bounds else None
    lo, hi = (bounds[0], bounds[1]) if bounds else (None, None)
    return PolarConeReport(nu, float(nu.sum()), float(nu.min()), lo, hi)


def simplicial_bounds(cs: ConstraintSet, basis: Optional[NullspaceBasis] = None):
    """``(dist_lower, dist_upper)`` for the distance of ``BA`` to the cone boundary.

    The cone is spanned by the rows of ``N``; ``BA`` lies in it iff the set is
    feasible. Returns None when ``k > 3``, ``k == 0``, the cone is not pointed,
    or ``BA`` is on (or outside) its boundary.
    """
    nb = _basis(cs, basis)
    if nb.k == 0 or nb.k > 3:
        return None
    res = simplicial_bounds_from_generators(nb.N, nb.BA)
    if res is None:
        return None
    return res[0], res[1]
