#!/usr/bin/env python3
"""Enumerate coupling matrices level by level and print a summary table.

Example:
    python3 scripts/enumerate_invariants.py --max-level 16
    python3 scripts/enumerate_invariants.py --levels 10 16 28 --out /tmp/cats
"""

import argparse
import os
import time

import numpy as np

from modkit.catalog import gen_su2
from modkit.fileio import catalog_dict, save_invariant_catalog
from modkit.invariant_enum import build_records, enumerate_invariants
from modkit.modular_data import modular_data


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-level", type=int, default=12)
    ap.add_argument("--levels", type=int, nargs="*",
                    help="specific levels (overrides --max-level)")
    ap.add_argument("--budget", type=int, default=10 ** 6)
    ap.add_argument("--out", help="directory for per-level catalog files")
    args = ap.parse_args()

    levels = args.levels or list(range(1, args.max_level + 1))
    if args.out:
        os.makedirs(args.out, exist_ok=True)

    print(f"{'level':>5} {'count':>5} {'commutant':>9} {'nodes':>7} "
          f"{'time':>8}  traces")
    for k in levels:
        t0 = time.perf_counter()
        md = modular_data(gen_su2(k))
        result = enumerate_invariants(md, budget=args.budget)
        dt = time.perf_counter() - t0
        traces = [int(np.trace(Z)) for Z in result.invariants]
        print(f"{k:>5} {len(result.invariants):>5} "
              f"{result.commutant_dim:>9} {result.nodes:>7} {dt:>7.2f}s  "
              f"{traces}")
        if args.out:
            obj = catalog_dict(
                {"system": f"su2:{k}", "count": len(result.invariants),
                 "commutant_dimension": result.commutant_dim},
                build_records(result))
            save_invariant_catalog(obj, os.path.join(args.out,
                                                     f"su2_{k}.json"))


if __name__ == "__main__":
    main()
