#!/usr/bin/env python3
"""Certify (r, s) pairs and restriction polynomials for every ADE graph.

Example:
    python3 scripts/kostant_tables.py
    python3 scripts/kostant_tables.py --graphs E6 E7 E8 --polynomials
"""

import argparse
import time

from modkit.catalog import graph_meta
from modkit.kostant import format_poly, kostant_suite

DEFAULT = [f"A{i}" for i in range(1, 9)] + [f"D{i}" for i in range(4, 9)] + \
    ["E6", "E7", "E8"]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--graphs", nargs="*", default=DEFAULT)
    ap.add_argument("--polynomials", action="store_true",
                    help="print every restriction polynomial")
    args = ap.parse_args()

    print(f"{'graph':>6} {'h':>3} {'(r, s)':>9} {'r*s':>5} {'2|G|':>5} "
          f"{'series':>7} {'match':>6} {'time':>8}")
    for name in args.graphs:
        t0 = time.perf_counter()
        suite = kostant_suite(name)
        dt = time.perf_counter() - t0
        meta = graph_meta(name)
        r, s = suite.rs
        print(f"{name:>6} {meta.coxeter:>3} {str(suite.rs):>9} "
              f"{r * s:>5} {2 * meta.group_order:>5} "
              f"{'ok' if suite.series_report.ok else 'FAIL':>7} "
              f"{'ok' if suite.match_report.ok else 'FAIL':>6} {dt:>7.3f}s")
        if args.polynomials:
            star = suite.series.graph.star
            for p in suite.polys:
                tag = " (extension)" if p.vertex == star else ""
                print(f"    p_{p.vertex}{tag} = {format_poly(p.coeffs)}")


if __name__ == "__main__":
    main()
