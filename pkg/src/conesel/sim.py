"""Scenario sampling and the closed loop with configuration jumps.

The state flows under a fixed configuration P while P stays feasible. When
the constraint set drifts so that P becomes infeasible, the selector picks a
new feasible configuration (a jump). Selectors also run on feasible steps so
they can re-enforce constraints that were dropped earlier.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from .baselines import baseline1_select, baseline2_select
from .constraints import Configuration, ConstraintSet, NullspaceBasis, nullspace_basis
from .controller import ControlGains, Zone, build_constraints, control_step, order_zones
from .errors import SamplingExhausted, SelectorContractError
from .feasibility import fc
from .selection import ica, lcs

ARENA = 10.0  # half-width of the square arena [m]
ZONE_RADIUS = 1.5
ZONE_SPEED = 2.0
MIN_SEPARATION = 7.0
GOAL_TOL = 0.1
MAX_ATTEMPTS = 10_000


@dataclass(frozen=True)
class Scenario:
    zones: tuple
    x0: np.ndarray
    goal: np.ndarray
    horizon_T: float = 30.0
    dt: float = 0.1
    gains: ControlGains = field(default_factory=ControlGains)
    seed: int = 0

    def __post_init__(self):
        # static first so zone indices match constraint columns
        object.__setattr__(self, "zones", tuple(order_zones(self.zones)))
        object.__setattr__(self, "x0", np.asarray(self.x0, dtype=float))
        object.__setattr__(self, "goal", np.asarray(self.goal, dtype=float))

    @property
    def n_static(self) -> int:
        return sum(not z.dynamic for z in self.zones)

    @property
    def n_dynamic(self) -> int:
        return sum(z.dynamic for z in self.zones)

    @property
    def n_steps(self) -> int:
        return int(round(self.horizon_T / self.dt))

    def constraints(self, x, t) -> ConstraintSet:
        return build_constraints(x, t, self.zones, self.goal, self.gains)

    def to_text(self) -> str:
        def vec(v):
            return " ".join(repr(float(a)) for a in v)

        g = self.gains
        lines = [
            f"seed = {self.seed}",
            f"n_static = {self.n_static}",
            f"n_dynamic = {self.n_dynamic}",
            f"x0 = {vec(self.x0)}",
            f"goal = {vec(self.goal)}",
            f"T = {self.horizon_T!r}",
            f"dt = {self.dt!r}",
            f"gamma_cbf = {g.gamma_cbf!r}",
            f"gamma_clf = {g.gamma_clf!r}",
            f"clf_speed = {g.clf_speed!r}",
            f"u_max = {g.u_max!r}",
        ]
        for i, z in enumerate(self.zones):
            lines.append(f"zone[{i}].center = {vec(z.center)}")
            lines.append(f"zone[{i}].velocity = {vec(z.velocity)}")
            lines.append(f"zone[{i}].radius = {z.radius!r}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Scenario":
        kv = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, val = line.partition("=")
            kv[key.strip()] = val.strip()

        def vec(key):
            return np.array([float(a) for a in kv[key].split()])

        n = int(kv["n_static"]) + int(kv["n_dynamic"])
        zones = [Zone(vec(f"zone[{i}].center"), vec(f"zone[{i}].velocity"),
                      float(kv[f"zone[{i}].radius"]))
                 for i in range(n)]
        defaults = ControlGains()
        gains = ControlGains(
            gamma_cbf=float(kv["gamma_cbf"]),
            gamma_clf=float(kv["gamma_clf"]),
            clf_speed=float(kv.get("clf_speed", defaults.clf_speed)),
            u_max=float(kv["u_max"]),
        )
        return cls(zones, vec("x0"), vec("goal"), float(kv["T"]), float(kv["dt"]),
                   gains, int(kv["seed"]))


def sample_scenario(n_static: int, n_dynamic: int, seed: int, horizon_T: float = 30.0,
                    dt: float = 0.1, gains: Optional[ControlGains] = None) -> Scenario:
    """Uniformly sample zones, start and goal in the arena.

    Zones are drawn once; start and goal are redrawn until they are far enough
    apart, the start is outside every zone, the goal is outside the static
    zones, and the start satisfies every constraint.
    """
    if n_static < 0 or n_dynamic < 0:
        raise ValueError("zone counts must be nonnegative")
    gains = ControlGains() if gains is None else gains
    rng = np.random.default_rng(seed)
    zones = [Zone(rng.uniform(-ARENA, ARENA, 2), np.zeros(2), ZONE_RADIUS)
             for _ in range(n_static)]
    for _ in range(n_dynamic):
        center = rng.uniform(-ARENA, ARENA, 2)
        ang = rng.uniform(0.0, 2 * math.pi)
        vel = ZONE_SPEED * np.array([math.cos(ang), math.sin(ang)])
        zones.append(Zone(center, vel, ZONE_RADIUS))
    centers = np.array([z.center for z in zones]).reshape(-1, 2)
    static = np.array([not z.dynamic for z in zones], dtype=bool)

    for _ in range(MAX_ATTEMPTS):
        x0 = rng.uniform(-ARENA, ARENA, 2)
        goal = rng.uniform(-ARENA, ARENA, 2)
        if np.linalg.norm(x0 - goal) < MIN_SEPARATION:
            continue
        if np.any(np.linalg.norm(centers - x0, axis=1) <= ZONE_RADIUS):
            continue
        if np.any(np.linalg.norm(centers[static] - goal, axis=1) <= ZONE_RADIUS):
            continue
        sc = Scenario(zones, x0, goal, horizon_T, dt, gains, seed)
        cs = sc.constraints(x0, 0.0)
        if not fc(cs, cs.all_ones()):
            continue
        return sc
    raise SamplingExhausted(
        f"no valid start/goal after {MAX_ATTEMPTS} attempts "
        f"({n_static} static, {n_dynamic} dynamic zones)")


# --- selectors ---------------------------------------------------------------
# A selector maps (cs, P, basis) to a feasible configuration and may keep
# state across the steps of one episode. reset() is called before each episode.

class Selector:
    name = "?"

    def reset(self):
        pass

    def select(self, cs: ConstraintSet, P: Configuration, nb: NullspaceBasis) -> Configuration:
        raise NotImplementedError


class IcaSelector(Selector):
    name = "ICA"

    def select(self, cs, P, nb):
        return ica(cs, P, nb)[0]


class LcsSelector(Selector):
    def __init__(self, depth: int = 5):
        if depth < 1:
            raise ValueError("search depth must be >= 1")
        self.depth = depth
        self.name = f"LCS{depth}"
        self.reset()

    def reset(self):
        self.P_last = None
        self.nu_last = None

    def select(self, cs, P, nb):
        P_new, nu = lcs(cs, P, self.P_last, self.nu_last, self.depth, nb)
        self.P_last, self.nu_last = P_new, nu
        return P_new


class Baseline1Selector(Selector):
    name = "B1"

    def select(self, cs, P, nb):
        return baseline1_select(cs)


class Baseline2Selector(Selector):
    name = "B2"

    def reset(self):
        self.lm = None

    def select(self, cs, P, nb):
        lm = np.zeros(cs.c) if self.lm is None else self.lm
        P_new, self.lm = baseline2_select(cs, P, lm)
        return P_new


SELECTOR_NAMES = ("ICA", "LCS1", "LCS5", "LCS10", "B1", "B2")


def make_selector(name: str, depth: int = 5) -> Selector:
    """``ICA``, ``B1``, ``B2``, ``LCS`` (uses ``depth``) or ``LCS<D>``."""
    key = name.strip().upper()
    if key == "ICA":
        return IcaSelector()
    if key == "B1":
        return Baseline1Selector()
    if key == "B2":
        return Baseline2Selector()
    if key.startswith("LCS"):
        rest = key[3:]
        return LcsSelector(int(rest) if rest else depth)
    raise ValueError(f"unknown selector {name!r}")


# --- episode -----------------------------------------------------------------

@dataclass(frozen=True)
class StepRecord:
    t: float
    jump_count: int
    P: Configuration
    dropped_soft_pct: float
    selector_time: float
    qp_time: float
    x: np.ndarray
    # number of zones containing the state; a metric, not an error
    zones_violated: int = 0


@dataclass
class RunMetrics:
    records: List[StepRecord]
    avg_drop_pct: float
    max_drop_pct: float
    avg_time: float
    max_time: float
    reached_goal: bool
    avg_qp_time: float = 0.0
    final_x: Optional[np.ndarray] = None

    @classmethod
    def from_records(cls, records: Sequence[StepRecord], goal, final_x) -> "RunMetrics":
        drops = np.array([r.dropped_soft_pct for r in records])
        sel = np.array([r.selector_time for r in records])
        qp = np.array([r.qp_time for r in records])
        reached = bool(np.linalg.norm(final_x - goal) <= GOAL_TOL)
        if not records:
            return cls([], 0.0, 0.0, 0.0, 0.0, reached, 0.0, final_x)
        return cls(list(records), float(drops.mean()), float(drops.max()),
                   float(sel.mean()), float(sel.max()), reached, float(qp.mean()), final_x)


def _dropped_pct(cs: ConstraintSet, P: Configuration) -> float:
    n_soft = cs.c - cs.n_hard
    if n_soft == 0:
        return 0.0
    return 100.0 * float(np.sum(~P.bits[cs.n_hard:])) / n_soft


def run_episode(sc: Scenario, selector: Selector, select_on_jump_only: bool = False) -> RunMetrics:
    selector.reset()
    clock = time.perf_counter
    x = sc.x0.copy()
    P = None
    jumps = 0
    records = []
    centers = np.array([z.center for z in sc.zones]).reshape(-1, 2)
    vels = np.array([z.velocity for z in sc.zones]).reshape(-1, 2)
    radii = np.array([z.radius for z in sc.zones])

    for s in range(sc.n_steps):
        t = s * sc.dt
        cs = sc.constraints(x, t)
        nb = nullspace_basis(cs)
        if P is None:
            P = cs.all_ones()
        feasible_now = bool(fc(cs, P, nb))
        if not feasible_now:
            jumps += 1

        if feasible_now and select_on_jump_only:
            P_new, sel_time = P, 0.0
        else:
            t0 = clock()
            P_new = selector.select(cs, P, nb)
            sel_time = clock() - t0

        if not P_new.respects(cs):
            raise SelectorContractError(f"{selector.name} dropped a hard constraint at t={t:.2f}")
        if not (P_new == P and feasible_now) and not fc(cs, P_new, nb):
            raise SelectorContractError(f"{selector.name} returned an infeasible configuration at t={t:.2f}")

        t0 = clock()
        u = control_step(cs, P_new)
        qp_time = clock() - t0

        inside = int(np.sum(np.linalg.norm(centers + vels * t - x, axis=1) < radii))
        records.append(StepRecord(t, jumps, P_new, _dropped_pct(cs, P_new), sel_time,
                                  qp_time, x.copy(), inside))
        P = P_new
        x = x + u * sc.dt

    return RunMetrics.from_records(records, sc.goal, x)
