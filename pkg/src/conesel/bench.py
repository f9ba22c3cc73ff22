"""Benchmark runners: zone-count sweep, fixed-size comparison, single episodes.

Every environment index ``e`` uses scenario seed ``seed0 + e`` for all
selectors, so comparisons between selectors are paired.
"""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Sequence

import numpy as np

from .sim import make_selector, run_episode, sample_scenario

SWEEP_SELECTORS = ("ICA", "LCS5", "B1", "B2")
FIXED_SELECTORS = ("ICA", "LCS1", "LCS5", "LCS10", "B1", "B2")


@dataclass
class BenchConfig:
    experiment: str = "sweep"
    zone_counts: List[int] = field(default_factory=lambda: list(range(2, 101, 2)))
    n_envs: int = 50
    selectors: List[str] = field(default_factory=lambda: list(SWEEP_SELECTORS))
    depth: int = 5  # used by a bare "LCS" selector name
    seed0: int = 0
    dt: float = 0.1
    horizon_T: float = 30.0
    jobs: int = 1
    output_dir: str = "results"
    select_on_jump_only: bool = False
    timing: bool = True

    def validate(self):
        if not self.selectors:
            raise ValueError("no selectors given")
        for s in self.selectors:
            make_selector(s, self.depth)
        if not self.zone_counts:
            raise ValueError("no zone counts given")
        for z in self.zone_counts:
            if z < 0 or z % 2:
                raise ValueError(f"zone count {z} must be even and nonnegative "
                                 "(split equally between static and dynamic)")
        if self.experiment in ("fixed", "once") and len(self.zone_counts) != 1:
            raise ValueError(f"the {self.experiment} experiment takes exactly one zone count")
        if self.n_envs < 1:
            raise ValueError("need at least one environment")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        if not (self.dt > 0 and self.horizon_T > 0):
            raise ValueError("dt and horizon must be positive")
        return self


@dataclass
class EnvResult:
    zones: int
    env: int
    selector: str
    drops: np.ndarray  # per-step dropped-soft percentage
    sel_times: np.ndarray
    qp_times: np.ndarray
    jumps: int
    reached_goal: bool


def _run_env(args) -> List[EnvResult]:
    zones, env, cfg = args
    sc = sample_scenario(zones // 2, zones - zones // 2, cfg.seed0 + env,
                         horizon_T=cfg.horizon_T, dt=cfg.dt)
    out = []
    for name in cfg.selectors:
        sel = make_selector(name, cfg.depth)
        r = run_episode(sc, sel, cfg.select_on_jump_only)
        out.append(EnvResult(
            zones, env, name,
            np.array([s.dropped_soft_pct for s in r.records]),
            np.array([s.selector_time for s in r.records]),
            np.array([s.qp_time for s in r.records]),
            r.records[-1].jump_count if r.records else 0,
            r.reached_goal,
        ))
    return out


def run_envs(cfg: BenchConfig, zone_counts: Sequence[int]) -> List[EnvResult]:
    tasks = [(z, e, cfg) for z in zone_counts for e in range(cfg.n_envs)]
    if cfg.jobs == 1:
        chunks = map(_run_env, tasks)
        return [r for chunk in chunks for r in chunk]
    with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
        # map keeps task order, so output does not depend on scheduling
        return [r for chunk in pool.map(_run_env, tasks) for r in chunk]


@dataclass
class Summary:
    zones: int
    selector: str
    avg_drop_pct: float
    max_drop_pct: float
    avg_time_s: float
    max_time_s: float
    avg_qp_time_s: float
    reached_goal_frac: float
    avg_jumps: float


def summarize(results: Sequence[EnvResult], zones: int, selector: str) -> Summary:
    rs = [r for r in results if r.zones == zones and r.selector == selector]
    drops = np.concatenate([r.drops for r in rs])
    st = np.concatenate([r.sel_times for r in rs])
    qt = np.concatenate([r.qp_times for r in rs])
    return Summary(zones, selector, float(drops.mean()), float(drops.max()),
                   float(st.mean()), float(st.max()), float(qt.mean()),
                   float(np.mean([r.reached_goal for r in rs])),
                   float(np.mean([r.jumps for r in rs])))


# --- CSV output ----------------------------------------------------------------

def _fmt(v, timing=True, is_time=False):
    if is_time and not timing:
        return "nan"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, str):
        return v
    v = float(v)
    if math.isnan(v):
        return "nan"
    return f"{v:.6g}" if is_time else f"{v:.6f}"


def write_csv(path: Path, header: Sequence[str], rows: Sequence[Sequence[str]]):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(buf.getvalue())
    except OSError as e:
        raise OSError(f"cannot write {path}: {e}") from e


SUMMARY_COLS = ("zones", "selector", "avg_drop_pct", "max_drop_pct", "avg_time_s",
                "max_time_s", "avg_qp_time_s", "reached_goal_frac", "avg_jumps")
_TIME_COLS = {"avg_time_s", "max_time_s", "avg_qp_time_s"}


def _summary_row(s: Summary, timing: bool, cols=SUMMARY_COLS):
    return [_fmt(getattr(s, c), timing, c in _TIME_COLS) for c in cols]


def cmd_sweep(cfg: BenchConfig) -> List[Summary]:
    cfg.validate()
    results = run_envs(cfg, cfg.zone_counts)
    sums = [summarize(results, z, s) for z in cfg.zone_counts for s in cfg.selectors]
    out = Path(cfg.output_dir)
    write_csv(out / "sweep.csv", SUMMARY_COLS, [_summary_row(s, cfg.timing) for s in sums])
    # one wide file per plot panel: a row per zone count, a column per selector
    for col in ("avg_drop_pct", "max_drop_pct", "avg_time_s", "max_time_s"):
        rows = []
        for z in cfg.zone_counts:
            by = {s.selector: s for s in sums if s.zones == z}
            rows.append([str(z)] + [_fmt(getattr(by[n], col), cfg.timing, col in _TIME_COLS)
                                    for n in cfg.selectors])
        write_csv(out / f"sweep_{col}.csv", ["zones", *cfg.selectors], rows)
    return sums


def drop_histogram(drops: np.ndarray):
    """Counts over unit-width bins with edges 0, 1, ..., 100 (last bin closed)."""
    counts, edges = np.histogram(drops, bins=np.arange(101))
    return counts, edges


TABLE_COLS = ("selector", "avg_time_s", "max_time_s", "avg_drop_pct", "max_drop_pct",
              "avg_qp_time_s", "reached_goal_frac", "avg_jumps")


def cmd_fixed(cfg: BenchConfig) -> List[Summary]:
    cfg.validate()
    z = cfg.zone_counts[0]
    results = run_envs(cfg, [z])
    sums = [summarize(results, z, s) for s in cfg.selectors]
    out = Path(cfg.output_dir)
    write_csv(out / "fixed_table.csv", TABLE_COLS,
              [_summary_row(s, cfg.timing, TABLE_COLS) for s in sums])
    rows = []
    for name in cfg.selectors:
        drops = np.concatenate([r.drops for r in results if r.selector == name])
        counts, edges = drop_histogram(drops)
        rows += [[name, str(int(lo)), str(int(hi)), str(int(n))]
                 for lo, hi, n in zip(edges[:-1], edges[1:], counts)]
    write_csv(out / "fixed_hist.csv", ["selector", "bin_lo", "bin_hi", "count"], rows)
    return sums


def cmd_once(cfg: BenchConfig):
    """One environment (index 0) per selector; per-step CSV and the scenario file."""
    cfg.validate()
    z = cfg.zone_counts[0]
    sc = sample_scenario(z // 2, z - z // 2, cfg.seed0, horizon_T=cfg.horizon_T, dt=cfg.dt)
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "scenario.txt").write_text(sc.to_text(), encoding="utf-8")
    metrics = {}
    for name in cfg.selectors:
        r = run_episode(sc, make_selector(name, cfg.depth), cfg.select_on_jump_only)
        rows = [[_fmt(s.t), str(s.jump_count), _fmt(s.dropped_soft_pct),
                 _fmt(s.selector_time, cfg.timing, True), _fmt(s.qp_time, cfg.timing, True),
                 _fmt(s.x[0]), _fmt(s.x[1]), str(s.zones_violated),
                 "".join("1" if b else "0" for b in s.P.bits)]
                for s in r.records]
        write_csv(out / f"once_{name}.csv",
                  ["t", "jump_count", "dropped_soft_pct", "selector_time_s", "qp_time_s",
                   "x", "y", "zones_violated", "config"], rows)
        metrics[name] = r
    return sc, metrics
