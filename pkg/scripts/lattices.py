"""Overgroup lattices of p-cycles: enumerated ones next to the transcribed figures.

    python3 scripts/lattices.py --dot-dir results/dot
"""

import argparse
from pathlib import Path

from gengraph.config import Caps
from gengraph.groups import GroupSpec
from gengraph.mobius import (
    degree_via_mobius,
    overgroup_lattice,
    sym_p_lattice,
    sym_p_plus_1_lattice,
    symbolic_lattices,
)
from gengraph.perm import Permutation

CASES = [("alt", 7, 7), ("sym", 7, 7), ("sym", 8, 7), ("alt", 8, 7), ("sym", 5, 5)]


def show(spec, g, caps, dot_dir):
    lat = overgroup_lattice(spec, g, caps)
    print(f"\n{spec.name}, g = {g}: {len(lat.nodes)} overgroups, "
          f"δ(g) = {degree_via_mobius(spec, g, lattice=lat)}")
    for nd in lat.nodes:
        if nd.mobius:
            print(f"  |H| = {nd.order:<6} μ = {nd.mobius:>2}  {nd.annotations['structure_hint']}")
    if dot_dir:
        (dot_dir / f"{spec.family.value}{spec.n}.dot").write_text(lat.to_dot() + "\n")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dot-dir", type=Path, default=None)
    ap.add_argument("--lattice-cap", type=int, default=50_000)
    args = ap.parse_args()
    caps = Caps.load(lattice_cap=args.lattice_cap)
    if args.dot_dir:
        args.dot_dir.mkdir(parents=True, exist_ok=True)
    for fam, n, p in CASES:
        spec = GroupSpec(fam, n)
        show(spec, Permutation.from_cycles([range(1, p + 1)], n), caps, args.dot_dir)

    print("\ntranscribed lattices (not enumerated):")
    lats = list(symbolic_lattices().values()) + [sym_p_lattice(p) for p in (7, 11, 19, 23)] \
        + [sym_p_plus_1_lattice(p) for p in (7, 11, 19, 23)]
    for lat in lats:
        print(f"  {lat.group:<7} |g| = {lat.element_order:<3} δ = {lat.degree()} ({lat.degree_parity()})")


if __name__ == "__main__":
    main()
