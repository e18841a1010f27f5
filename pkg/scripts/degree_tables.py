"""Class-level degree tables for Alt_n and Sym_n, with parity vs. prediction.

    python3 scripts/degree_tables.py --n-max 9 --out results/degrees
"""

import argparse
import time
from pathlib import Path

from gengraph.config import Caps
from gengraph.graph import degree_table
from gengraph.groups import Family, GroupSpec


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-min", type=int, default=3)
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--out", type=Path, default=None, help="directory for CSV files")
    args = ap.parse_args()
    caps = Caps.load(threads=args.threads, enumeration_cap=max(9, args.n_max))
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
    for fam in Family:
        for n in range(args.n_min, args.n_max + 1):
            spec = GroupSpec(fam, n)
            t0 = time.perf_counter()
            report = degree_table(spec, caps)
            dt = time.perf_counter() - t0
            odd = ", ".join(r.label for r in report.odd_rows()) or "-"
            print(f"{spec.name:<7} classes={len(report.rows):<3} edges={report.edge_count:<12} "
                  f"odd: {odd:<10} mismatches={len(report.mismatches())}  {dt:6.1f}s")
            if args.out:
                (args.out / f"{spec.family.value}{n}.csv").write_text(report.to_csv())


if __name__ == "__main__":
    main()
