"""Drop percentage and selector time versus zone count.

Writes sweep.csv plus one wide CSV per plot panel. The full default grid
(2..100 zones, 50 environments, 4 selectors) takes many hours on one core;
use --envs / --zones / --jobs to scale it.

    python scripts/run_sweep.py --envs 10 --zones 10:100:10 --jobs 4 --out results/sweep
"""
import sys

from conesel.cli import main

if __name__ == "__main__":
    sys.exit(main(["sweep", *sys.argv[1:]]))
