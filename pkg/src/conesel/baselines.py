"""Comparison heuristics built on an elastic (slacked) LP feasibility check.

Neither baseline is a certified reproduction of its original publication; both
are reconstructed from short descriptions and exist to compare trends.

* Baseline 1 follows the elastic-filter pattern: while the elastic LP needs
  slack, drop the soft constraint whose removal lowers the total slack most.
* Baseline 2 drops constraints in order of the previous step's Lagrange
  multipliers, after reintroducing everything that was dropped before.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constraints import Configuration, ConstraintSet
from .errors import HardInfeasibleError
from .lp import LpProblem, LpStatus, feas_tol, solve_lp


@dataclass(frozen=True)
class SlackReport:
    feasible: bool
    # length c; zero for hard and disregarded constraints
    slacks: np.ndarray
    total_slack: float
    # elastic-LP multipliers, length c; zero for disregarded constraints
    multipliers: np.ndarray


def slack_feasible(cs: ConstraintSet, P: Configuration) -> SlackReport:
    """Elastic LP: minimize the total slack needed by the enforced soft constraints."""
    on = P.enforced
    hard = on < cs.n_hard
    soft_idx = on[~hard]
    m, ns = cs.m, soft_idx.size
    G = np.zeros((on.size, m + ns))
    G[:, :m] = cs.A[:, on].T
    G[np.flatnonzero(~hard), m + np.arange(ns)] = -1.0
    cost = np.concatenate([np.zeros(m), np.ones(ns)])
    lower = np.concatenate([np.full(m, -np.inf), np.zeros(ns)])
    sol = solve_lp(LpProblem(cost, ineq_lhs=G, ineq_rhs=cs.B[on], var_lower=lower))
    if sol.status is LpStatus.INFEASIBLE:
        raise HardInfeasibleError("hard constraints alone are infeasible")
    slacks = np.zeros(cs.c)
    slacks[soft_idx] = np.maximum(sol.x[m:], 0.0)
    total = float(slacks.sum())
    mult = np.zeros(cs.c)
    mult[on] = sol.duals_ineq
    return SlackReport(total <= feas_tol(cs.B[on]), slacks, total, mult)


def baseline1_select(cs: ConstraintSet) -> Configuration:
    P = cs.all_ones()
    rep = slack_feasible(cs, P)
    while not rep.feasible:
        tol = feas_tol(cs.B)
        cand = [j for j in P.enforced if j >= cs.n_hard and rep.slacks[j] > tol]
        if not cand:
            cand = [j for j in P.enforced if j >= cs.n_hard]
        best = None
        for j in cand:
            trial = P.with_bit(j, False)
            r = slack_feasible(cs, trial)
            if r.feasible:
                best = (trial, r)
                break
            if best is None or r.total_slack < best[1].total_slack:
                best = (trial, r)
        P, rep = best
    return P


def baseline2_select(cs: ConstraintSet, P_prev: Configuration, lm_prev):
    """Returns ``(P, multipliers)``; feed both back in at the next step."""
    lm = np.where(P_prev.bits, np.asarray(lm_prev, dtype=float), 0.0)
    P = cs.all_ones()
    rep = slack_feasible(cs, P)
    order = sorted(range(cs.n_hard, cs.c), key=lambda j: (-lm[j], j))
    it = iter(order)
    while not rep.feasible:
        j = next(it)
        P = P.with_bit(j, False)
        rep = slack_feasible(cs, P)
    return P, rep.multipliers
