"""Exact odd-degree probabilities: closed form and, where enumerable, direct counts."""

from fractions import Fraction

from gengraph.graph import degree_table
from gengraph.groups import Family, GroupSpec
from gengraph.numtheory import eulerian_predicate, odd_degree_probability

if __name__ == "__main__":
    for n in range(3, 25):
        if n == 6 or eulerian_predicate(n):
            continue
        for fam in Family:
            spec = GroupSpec(fam, n)
            rep = odd_degree_probability(spec)
            direct = ""
            if n <= 8:
                count = degree_table(spec).odd_vertex_count()
                direct = f"direct {Fraction(count, spec.order - 1)}"
            print(f"{spec.name:<7} p={rep.p:<3} |Out|={rep.out_order}  P = {rep.value}  "
                  f"≈ {float(rep.value):.5f}  {direct}")
