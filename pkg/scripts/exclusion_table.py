"""Admissibility verdicts for the A/D/E families under both parity cases.

    python3 scripts/exclusion_table.py [--max 8]
"""

import argparse
import time

from qhwb.config_solver import Even, OddGood, admissible, dynkin
from qhwb.errors import InvalidDynkinParameters


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max", type=int, default=8)
    args = ap.parse_args()
    print(f"{'graph':<6} {'even':<7} {'oddgood':<8} {'core size':>9} {'ms':>7}")
    for kind in "ADE":
        for m in range(1, args.max + 1):
            try:
                g = dynkin(kind, m)
            except InvalidDynkinParameters:
                continue
            start = time.perf_counter()
            ev, od = admissible(g, Even), admissible(g, OddGood)
            ms = 1000 * (time.perf_counter() - start)
            core = len(ev.conflict_core) if ev.conflict_core else "-"
            print(f"{kind}{m:<5} {ev.status:<7} {od.status:<8} {core:>9} {ms:7.1f}")


if __name__ == "__main__":
    main()
