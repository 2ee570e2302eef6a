"""Ratio N_lb(n)/g(n) per level for four towers, written as CSV.

    python3 scripts/dv_trend.py --levels 10 --out dv_trend.csv
"""

import argparse
import csv
import sys
import time

from towerforge import towers
from towerforge.fields import base_field

TOWERS = (
    ("E", 2, "T+1"),
    ("E", 2, "T^2+T+1"),
    ("F", 2, "T+1"),
    ("F", 3, "T+2"),
)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--levels", type=int, default=10)
    ap.add_argument("--out")
    args = ap.parse_args(argv)

    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(towers.REPORT_COLUMNS)
    for kind, q, L in TOWERS:
        t0 = time.perf_counter()
        tower = towers.make_tower(kind, base_field(q), L=L)
        for rep in towers.dv_series(tower, range(1, args.levels + 1)):
            w.writerow(rep.csv_row())
        print(f"{tower.name} q={q}: {time.perf_counter() - t0:.2f}s", file=sys.stderr)
    if args.out:
        fh.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
