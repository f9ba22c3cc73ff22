"""Selector comparison at a fixed zone count (default 100 zones).

Writes fixed_table.csv (times and drops per selector) and fixed_hist.csv
(per-step drop percentage counts over unit bins 0..100).

    python scripts/run_fixed.py --envs 10 --jobs 4 --out results/fixed
"""
import sys

from conesel.cli import main

if __name__ == "__main__":
    sys.exit(main(["fixed", *sys.argv[1:]]))
