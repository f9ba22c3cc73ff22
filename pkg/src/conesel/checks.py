"""Randomized cross-checks of the feasibility machinery against the oracles.

Each check returns a CheckResult; ``conesel selftest`` and the acceptance
tests both run them.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import oracles
from .constraints import Configuration, nullspace_basis
from .feasibility import farkas_feasible, fc, multiplier_lp, simplicial_bounds
from .lp import LpStatus
from .selection import ica, init_config


@dataclass
class CheckResult:
    name: str
    passed: bool
    trials: int
    failures: int = 0
    detail: dict = field(default_factory=dict)

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        extra = " ".join(f"{k}={v}" for k, v in self.detail.items())
        return f"{verdict} {self.name}: {self.failures}/{self.trials} failures {extra}".rstrip()


def check_oracle_agreement(n=10_000, seed=0) -> CheckResult:
    """Farkas verdict and FC verdict (random hard-respecting P) versus the slack LP."""
    rng = np.random.default_rng(seed)
    bad = 0
    n_infeasible = 0
    first = None
    for i in range(n):
        cs = oracles.random_instance(rng)
        nb = nullspace_basis(cs)
        want = oracles.oracle_feasible(cs)
        n_infeasible += not want
        P = oracles.random_config(rng, cs)
        ok = (farkas_feasible(cs, nb) == want
              and bool(fc(cs, P, nb)) == oracles.oracle_feasible(cs, P))
        if not ok:
            bad += 1
            first = first if first is not None else i
    return CheckResult("oracle agreement", bad == 0, n, bad,
                       {"infeasible_frac": round(n_infeasible / n, 3), "first_bad": first})


def check_zero_maximizer(n=200, seed=1) -> CheckResult:
    rng = np.random.default_rng(seed)
    bad = done = 0
    worst = 0.0
    while done < n:
        cs = oracles.random_instance(rng, p_infeasible=0.0)
        if not oracles.oracle_feasible(cs):
            continue
        done += 1
        nb = nullspace_basis(cs)
        sol = multiplier_lp(cs, nb)
        if nb.k == 0:
            # the objective vanishes identically; mu = 0 is trivially optimal
            ok = sol.status is LpStatus.OPTIMAL
        else:
            # mu = 0 is feasible, and optimal iff its value 0 equals the optimum
            ok = (sol.status is LpStatus.OPTIMAL and abs(sol.objective_value) <= 1e-8
                  and bool(np.all(-nb.N @ np.zeros(nb.k) <= 0)))
            ref = oracles.highs_solve(nb.BA, A_ub=-nb.N, b_ub=np.zeros(cs.c))
            ok = ok and ref.status == 0 and abs(ref.fun) <= 1e-8
            if sol.status is LpStatus.OPTIMAL:
                worst = max(worst, abs(sol.objective_value))
        bad += not ok
    return CheckResult("zero maximizer", bad == 0, n, bad, {"max_abs_opt": f"{worst:.2e}"})


def check_ica_monotone(n=2000, seed=2) -> CheckResult:
    rng = np.random.default_rng(seed)
    bad = done = 0
    while done < n:
        cs = oracles.random_instance(rng, hard_feasible=True, c_range=(3, 12))
        if not oracles.oracle_feasible(cs, cs.hard_only()):
            continue
        done += 1
        nb = nullspace_basis(cs)
        start = [cs.hard_only(), init_config(cs), oracles.random_config(rng, cs)][done % 3]
        trace = []
        P, _ = ica(cs, start, nb, trace=trace)
        ok = len(trace) - 1 <= cs.c
        prev = None
        for Pi, cert in trace:
            ok = ok and bool(cert) and oracles.oracle_feasible(cs, Pi)
            if prev is not None:
                ok = ok and bool(np.all(Pi.bits >= prev.bits))
            prev = Pi
        ok = ok and P == trace[-1][0]
        bad += not ok
    return CheckResult("ICA monotone feasibility", bad == 0, n, bad)


def check_distance_bounds(n=200, seed=3, n_samples=5000) -> CheckResult:
    rng = np.random.default_rng(seed)
    bad = missing = 0
    ratios = []
    for _ in range(n):
        cs = oracles.random_k2_cone(rng)
        nb = nullspace_basis(cs)
        bounds = simplicial_bounds(cs, nb)
        if bounds is None:
            missing += 1
            bad += 1
            continue
        lo, hi = bounds
        # orthonormal basis from scipy-free QR, independent of nullspace_basis
        Q = np.linalg.svd(cs.A)[2][cs.m:].T
        d = oracles.boundary_distance_2d(Q, Q.T @ cs.B, n_samples, rng)
        if not (lo - 1e-6 <= d <= hi + 1e-6):
            bad += 1
        ratios.append(hi / lo if lo > 0 else np.inf)
    return CheckResult("distance bounds", bad == 0, n, bad,
                       {"no_bound": missing, "max_hi_over_lo": f"{max(ratios, default=0):.2f}"})


def check_init_config(n=1000, seed=4) -> CheckResult:
    rng = np.random.default_rng(seed)
    bad = done = 0
    while done < n:
        cs = oracles.random_instance(rng, hard_feasible=True)
        if not oracles.oracle_feasible(cs, cs.hard_only()):
            continue
        done += 1
        P = init_config(cs)
        bad += not (fc(cs, P) and oracles.oracle_feasible(cs, P))
    return CheckResult("init configuration feasible", bad == 0, n, bad)


ALL_CHECKS = {
    "oracle": check_oracle_agreement,
    "zero_max": check_zero_maximizer,
    "ica": check_ica_monotone,
    "bounds": check_distance_bounds,
    "init": check_init_config,
}


def run_all(scale=1.0, seed=0):
    """Run every check; ``scale`` shrinks the trial counts for quick runs."""
    sizes = {"oracle": 10_000, "zero_max": 200, "ica": 2000, "bounds": 200, "init": 1000}
    out = []
    for i, (key, fn) in enumerate(ALL_CHECKS.items()):
        out.append(fn(max(1, int(sizes[key] * scale)), seed=seed + i))
    return out
