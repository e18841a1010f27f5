"""Run every verification suite and write the fact ledger.

    python3 scripts/ledger.py --format markdown --out results/ledger.md
"""

import argparse
import sys
from pathlib import Path

from gengraph.config import Caps
from gengraph.verify import SUITES, export_ledger, run_all


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--config", type=Path, default=None)
    ap.add_argument("--suite", action="append", choices=SUITES)
    ap.add_argument("--format", choices=["json", "csv", "markdown"], default="markdown")
    ap.add_argument("--out", type=Path, default=None)
    args = ap.parse_args()
    ledger = run_all(Caps.load(args.config), tuple(args.suite or SUITES))
    text = export_ledger(ledger, args.format)
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    print(ledger.counts(), file=sys.stderr)
    return 0 if ledger.ok else 1


if __name__ == "__main__":
    sys.exit(main())
