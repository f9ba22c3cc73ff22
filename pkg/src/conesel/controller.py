"""CBF/CLF constraint assembly for a planar single integrator and the QP controller.

Column layout of the assembled ConstraintSet (hard constraints first):

    [ CLF | +u box (m) | -u box (m) | static zones | dynamic zones ]
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .constraints import Configuration, ConstraintSet, mask
from .qp import solve_min_norm_qp


@dataclass(frozen=True)
class Zone:
    center: np.ndarray  # position at t = 0 [m]
    velocity: np.ndarray = field(default_factory=lambda: np.zeros(2))  # [m/s]
    radius: float = 1.5  # [m]

    def __post_init__(self):
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float))
        object.__setattr__(self, "velocity", np.asarray(self.velocity, dtype=float))
        if self.radius <= 0:
            raise ValueError("zone radius must be positive")

    @property
    def dynamic(self) -> bool:
        return bool(np.any(self.velocity != 0.0))

    def position(self, t: float) -> np.ndarray:
        return self.center + self.velocity * t

    def h(self, x, t: float) -> float:
        """Barrier value ``|x - y|^2 - r^2``; positive outside the zone."""
        d = np.asarray(x, dtype=float) - self.position(t)
        return float(d @ d - self.radius ** 2)


@dataclass(frozen=True)
class ControlGains:
    gamma_cbf: float = 1.0  # [1/s]
    # CLF class-K function alpha(V) = min(gamma_clf * V, clf_speed * sqrt(V)).
    # The sqrt branch keeps CLF + input box jointly feasible at any distance
    # as long as clf_speed < 2 * u_max.
    gamma_clf: float = 1.0  # [1/s]
    clf_speed: float = 1.9  # [m/s]
    u_max: float = 1.0  # [m/s]

    def __post_init__(self):
        for name in ("gamma_cbf", "gamma_clf", "clf_speed", "u_max"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")

    def clf_alpha(self, V: float) -> float:
        return min(self.gamma_clf * V, self.clf_speed * math.sqrt(V))


def order_zones(zones: Sequence[Zone]):
    """Static zones then dynamic zones, each group in input order."""
    return [z for z in zones if not z.dynamic] + [z for z in zones if z.dynamic]


def build_constraints(x, t: float, zones: Sequence[Zone], goal,
                      gains: ControlGains) -> ConstraintSet:
    x = np.asarray(x, dtype=float)
    goal = np.asarray(goal, dtype=float)
    m = x.shape[0]
    zones = order_zones(zones)
    c = 1 + 2 * m + len(zones)
    A = np.zeros((m, c))
    B = np.zeros(c)

    e = x - goal
    V = float(e @ e)
    A[:, 0] = 2.0 * e
    B[0] = -gains.clf_alpha(V)
    A[:, 1:1 + m] = np.eye(m)
    A[:, 1 + m:1 + 2 * m] = -np.eye(m)
    B[1:1 + 2 * m] = gains.u_max

    for i, z in enumerate(zones):
        col = 1 + 2 * m + i
        d = x - z.position(t)
        h = float(d @ d - z.radius ** 2)
        A[:, col] = -2.0 * d
        # dh/dy = -2 d^T, so the moving-obstacle term is -2 d^T v
        B[col] = gains.gamma_cbf * h - 2.0 * float(d @ z.velocity)
    return ConstraintSet(A, B, n_hard=1 + 2 * m)


def control_step(cs: ConstraintSet, P: Configuration, u_ref=None, return_multipliers=False):
    """Min-norm QP input for the enforced constraints of ``P``.

    Raises InfeasibleError if ``P`` is not feasible; callers are expected to
    select a feasible configuration first.
    """
    if u_ref is None:
        u_ref = np.zeros(cs.m)
    A, B = mask(cs, P)
    return solve_min_norm_qp(u_ref, A, B, return_multipliers=return_multipliers)
