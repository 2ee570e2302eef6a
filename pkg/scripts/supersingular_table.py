"""Supersingular parameters u for every small prime L, found by a direct scan and via roots of p_d."""

import argparse
import sys

from towerforge.deuring import prime_list
from towerforge.drinfeld import supersingular_u_set
from towerforge.fields import base_field
from towerforge.grammar import format_poly


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, nargs="+", default=[2, 3])
    args = ap.parse_args(argv)

    bad = 0
    print(f"{'q':>2}  {'L':<14} {'m_d':>4} {'found':>5}  agree")
    for q in args.q:
        Fq = base_field(q)
        for L in prime_list(Fq):
            rep = supersingular_u_set(L, Fq)
            bad += not rep.ok
            print(f"{q:>2}  {format_poly(L):<14} {rep.m_d:>4} {len(rep.u_values):>5}  {str(rep.agree).lower()}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
