"""Plot the CSVs written by run_sweep.py / run_fixed.py (needs matplotlib)."""
import argparse
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def _wide(path):
    data = np.genfromtxt(path, delimiter=",", names=True, dtype=None, encoding="utf-8")
    return data, [n for n in data.dtype.names if n != "zones"]


def plot_sweep(d: Path):
    fig, axes = plt.subplots(2, 2, figsize=(10, 7), sharex=True)
    panels = [("avg_drop_pct", "avg drop [%]"), ("max_drop_pct", "max drop [%]"),
              ("avg_time_s", "avg time [s]"), ("max_time_s", "max time [s]")]
    for ax, (col, label) in zip(axes.ravel(), panels):
        data, sels = _wide(d / f"sweep_{col}.csv")
        for s in sels:
            ax.plot(data["zones"], data[s], marker=".", label=s)
        ax.set_ylabel(label)
        ax.grid(alpha=0.3)
    axes[1, 0].set_xlabel("zones")
    axes[1, 1].set_xlabel("zones")
    axes[0, 0].legend()
    fig.tight_layout()
    fig.savefig(d / "sweep.png", dpi=120)


def plot_hist(d: Path):
    data = np.genfromtxt(d / "fixed_hist.csv", delimiter=",", names=True, dtype=None,
                         encoding="utf-8")
    sels = list(dict.fromkeys(data["selector"]))
    fig, axes = plt.subplots(len(sels), 1, figsize=(6, 1.8 * len(sels)), sharex=True)
    for ax, s in zip(np.atleast_1d(axes), sels):
        rows = data[data["selector"] == s]
        ax.bar(rows["bin_lo"], rows["count"], width=1.0, align="edge")
        ax.set_yscale("log")
        ax.set_ylabel(s)
    np.atleast_1d(axes)[-1].set_xlabel("drop [%]")
    fig.tight_layout()
    fig.savefig(d / "fixed_hist.png", dpi=120)


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("dir", type=Path)
    args = ap.parse_args()
    if (args.dir / "sweep_avg_drop_pct.csv").exists():
        plot_sweep(args.dir)
    if (args.dir / "fixed_hist.csv").exists():
        plot_hist(args.dir)
