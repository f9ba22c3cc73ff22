"""Command line: ``conesel sweep|fixed|once|check|selftest``.

Options can also come from a ``key = value`` file passed with ``--config``;
keys are the long option names without dashes (``select_on_jump_only``,
``no_timing`` with underscores). Command-line flags win over the file.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .bench import FIXED_SELECTORS, SWEEP_SELECTORS, BenchConfig, cmd_fixed, cmd_once, cmd_sweep
from .constraints import ConstraintSet, nullspace_basis
from .errors import HardInfeasibleError, InfeasibleInput

DEFAULT_ZONES = {"sweep": "2:100:2", "fixed": "100", "once": "50"}
DEFAULT_SELECTORS = {"sweep": ",".join(SWEEP_SELECTORS), "fixed": ",".join(FIXED_SELECTORS),
                     "once": "ICA"}
_BOOL_KEYS = {"select_on_jump_only", "no_timing"}


def parse_zones(text: str):
    """``"50"``, ``"2,4,8"`` or an inclusive range ``"2:100:2"``."""
    text = str(text).strip()
    if ":" in text:
        parts = [int(p) for p in text.split(":")]
        lo, hi = parts[0], parts[1]
        step = parts[2] if len(parts) > 2 else 1
        return list(range(lo, hi + 1, step))
    return [int(p) for p in text.split(",") if p.strip()]


def read_config_file(path):
    out = {}
    for ln, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{ln}: expected key = value")
        k, v = (s.strip() for s in line.split("=", 1))
        k = k.replace("-", "_")
        if k in _BOOL_KEYS:
            out[k] = v.lower() in ("1", "true", "yes", "on")
        else:
            out[k] = v
    return out


def _add_bench_flags(p):
    p.add_argument("--config", help="key = value file; flags override it")
    p.add_argument("--zones", help="zone counts: N, a,b,c or lo:hi:step")
    p.add_argument("--envs", type=int, help="environments per zone count")
    p.add_argument("--selectors", help="comma list from ICA,LCS<D>,LCS,B1,B2")
    p.add_argument("--depth", type=int, help="search depth for a bare LCS (default 5)")
    p.add_argument("--seed", type=int, help="seed of environment 0")
    p.add_argument("--dt", type=float, help="integration step [s]")
    p.add_argument("--horizon", type=float, help="episode length [s]")
    p.add_argument("--jobs", type=int, help="worker processes")
    p.add_argument("--out", help="output directory")
    p.add_argument("--select-on-jump-only", action="store_true", default=None,
                   help="call the selector only when the configuration becomes infeasible")
    p.add_argument("--no-timing", action="store_true", default=None,
                   help="write time columns as nan (byte-reproducible output)")


def build_config(cmd: str, args) -> BenchConfig:
    vals = read_config_file(args.config) if args.config else {}
    for k in ("zones", "envs", "selectors", "depth", "seed", "dt", "horizon", "jobs", "out",
              "select_on_jump_only", "no_timing"):
        v = getattr(args, k)
        if v is not None:
            vals[k] = v
    unknown = set(vals) - {"zones", "envs", "selectors", "depth", "seed", "dt", "horizon",
                           "jobs", "out", "select_on_jump_only", "no_timing"}
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    sels = [s.strip() for s in str(vals.get("selectors", DEFAULT_SELECTORS[cmd])).split(",")
            if s.strip()]
    return BenchConfig(
        experiment=cmd,
        zone_counts=parse_zones(vals.get("zones", DEFAULT_ZONES[cmd])),
        n_envs=int(vals.get("envs", 50 if cmd != "once" else 1)),
        selectors=sels,
        depth=int(vals.get("depth", 5)),
        seed0=int(vals.get("seed", 0)),
        dt=float(vals.get("dt", 0.1)),
        horizon_T=float(vals.get("horizon", 30.0)),
        jobs=int(vals.get("jobs", 1)),
        output_dir=str(vals.get("out", "results")),
        select_on_jump_only=bool(vals.get("select_on_jump_only", False)),
        timing=not bool(vals.get("no_timing", False)),
    ).validate()


def _print_summaries(sums):
    print(f"{'zones':>5} {'selector':<8} {'avg_drop%':>9} {'max_drop%':>9} "
          f"{'avg_t[s]':>9} {'max_t[s]':>9} {'goal':>5}")
    for s in sums:
        print(f"{s.zones:>5} {s.selector:<8} {s.avg_drop_pct:9.3f} {s.max_drop_pct:9.2f} "
              f"{s.avg_time_s:9.4f} {s.max_time_s:9.4f} {s.reached_goal_frac:5.2f}")


def run_check(path) -> int:
    from .feasibility import farkas_feasible, fc, polar_components
    from .selection import ica, init_config

    cs = ConstraintSet.from_text(Path(path).read_text(encoding="utf-8"))
    nb = nullspace_basis(cs)
    np.set_printoptions(precision=6, suppress=True)
    print(f"m={cs.m} c={cs.c} n_hard={cs.n_hard} nullspace_dim={nb.k}")
    ok = farkas_feasible(cs, nb)
    print(f"feasible: {ok}")
    cert = fc(cs, cs.all_ones(), nb)
    print(f"nu (all enforced): {cert.nu if cert else 'none'}")
    if ok:
        rep = polar_components(cs, nb)
        print(f"nu (min-sum): {rep.nu_star}")
        if rep.dist_lower is not None:
            print(f"boundary distance bounds: [{rep.dist_lower:.6g}, {rep.dist_upper:.6g}]")
        else:
            print("boundary distance bounds: n/a")
    try:
        P, nu = ica(cs, init_config(cs, nb), nb)
        print(f"ICA configuration: {''.join('1' if b else '0' for b in P.bits)} "
              f"({P.n_enforced}/{cs.c} enforced)")
    except (HardInfeasibleError, InfeasibleInput) as e:
        print(f"ICA configuration: none ({e})")
    return 0


def run_selftest(scale: float) -> int:
    from .checks import run_all
    from .sim import make_selector, run_episode, sample_scenario

    failed = 0
    for r in run_all(scale):
        print(r.line(), flush=True)
        failed += not r.passed
    sc = sample_scenario(0, 0, seed=0)
    m = run_episode(sc, make_selector("ICA"))
    ok = m.reached_goal and m.max_drop_pct == 0
    print(f"{'PASS' if ok else 'FAIL'} empty arena reaches goal", flush=True)
    failed += not ok
    print("selftest:", "ok" if failed == 0 else f"{failed} check(s) failed")
    return 1 if failed else 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="conesel", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)
    for name, help_ in (("sweep", "drop percentage and timing versus zone count"),
                        ("fixed", "selector comparison at one zone count"),
                        ("once", "single episode with per-step output")):
        _add_bench_flags(sub.add_parser(name, help=help_))
    pc = sub.add_parser("check", help="analyze a constraint file")
    pc.add_argument("file")
    ps = sub.add_parser("selftest", help="randomized oracle cross-checks")
    ps.add_argument("--scale", type=float, default=1.0,
                    help="fraction of the default trial counts")
    args = ap.parse_args(argv)

    try:
        if args.cmd == "check":
            return run_check(args.file)
        if args.cmd == "selftest":
            return run_selftest(args.scale)
        cfg = build_config(args.cmd, args)
    except (ValueError, OSError) as e:
        ap.error(str(e))

    if args.cmd == "sweep":
        _print_summaries(cmd_sweep(cfg))
    elif args.cmd == "fixed":
        _print_summaries(cmd_fixed(cfg))
    else:
        sc, metrics = cmd_once(cfg)
        for name, r in metrics.items():
            print(f"{name}: avg_drop={r.avg_drop_pct:.3f}% max_drop={r.max_drop_pct:.2f}% "
                  f"avg_t={r.avg_time:.4f}s max_t={r.max_time:.4f}s "
                  f"jumps={r.records[-1].jump_count} reached_goal={r.reached_goal}")
    print(f"wrote {cfg.output_dir}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
