"""Overgroup lattices of a cyclic subgroup, their Moebius function and the
Moebius-sum formula for vertex degrees.

Subgroups are stored as boolean masks over the element table, so identity
of subgroups is decided on the full element set.  Saturation starts from
<g> and repeatedly adjoins one element; candidates are thinned to one per
orbit of (H x H acting by left/right multiplication, plus unit powers),
which does not change <H, y>.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .config import DEFAULT_CAPS, Caps, InputError, ResourceError
from .elements import compose_rows, element_table, invert_rows, orbit_labels
from .groups import Family, GroupSpec, block_system
from .numtheory import squarefree_part
from .perm import Permutation, element_order
from .schreier import StabChain


# -- subgroup masks ------------------------------------------------------------

def closure_mask(table, gens: list[tuple[int, ...]], start: np.ndarray | None = None) -> np.ndarray:
    """Element mask of <gens> (together with the subgroup ``start`` if given)."""
    mask = np.zeros(len(table), dtype=bool)
    if start is None:
        mask[table.identity_index] = True
        frontier = np.array([table.identity_index])
    else:
        mask |= start
        frontier = np.flatnonzero(start)
    gen_arrays = [np.asarray(s, dtype=np.int8) for s in gens]
    while len(frontier):
        base = table.perms[frontier]
        found = [table.index(s[base]) for s in gen_arrays]
        cand = np.unique(np.concatenate(found))
        new = cand[~mask[cand]]
        mask[new] = True
        frontier = new
    return mask


def fingerprint(mask: np.ndarray) -> str:
    return hashlib.sha256(np.packbits(mask).tobytes()).hexdigest()[:16]


@lru_cache(maxsize=16)
def derived_subgroup_mask(spec: GroupSpec) -> np.ndarray:
    """G' as the normal closure of commutators of the standard generators."""
    table = element_table(spec)
    gens = [s.images for s in spec.generators()]

    def comm(a, b):
        a, b = Permutation(a), Permutation(b)
        return (~a * ~b * a * b).images

    words = [comm(a, b) for a in gens for b in gens]
    mask = closure_mask(table, words)
    while True:
        elems = table.perms[mask]
        extra = []
        for s in gens:
            s_arr = np.asarray(s, dtype=np.int8)
            s_inv = np.argsort(s_arr)
            conj = s_arr[elems[:, s_inv]]
            idx = table.index(conj)
            extra.extend(idx[~mask[idx]].tolist())
        if not extra:
            return mask
        words += [tuple(table.perms[i].tolist()) for i in sorted(set(extra))]
        mask = closure_mask(table, words, start=mask)


def normalizer_order_of(table, mask: np.ndarray, gens: list[tuple[int, ...]]) -> int:
    """|N_G(H)| by scanning every s in G (H given by mask and generators)."""
    S = table.perms
    S_inv = invert_rows(S)
    ok = np.ones(len(table), dtype=bool)
    for h in gens:
        conj = compose_rows(compose_rows(S_inv, np.asarray(h, dtype=np.int8)), S)
        ok &= mask[table.index(conj)]
    return int(ok.sum())


# -- lattice -------------------------------------------------------------------

@dataclass
class LatticeNode:
    generators: list[Permutation]
    order: int
    fingerprint: str
    mask: np.ndarray = field(repr=False)
    mobius: int | None = None
    annotations: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "mobius": self.mobius,
            "fingerprint": self.fingerprint,
            "generators": [str(p) for p in self.generators],
            "annotations": self.annotations,
        }


@dataclass
class SubgroupLattice:
    spec: GroupSpec
    base_generator: Permutation
    nodes: list[LatticeNode]
    edges: list[tuple[int, int]]        # (lower, upper) covering pairs
    saturated: bool = True
    symbolic: bool = False

    @property
    def top(self) -> int:
        tops = [i for i, nd in enumerate(self.nodes) if nd.order == self.spec.order]
        if len(tops) != 1:
            raise AssertionError("lattice must have exactly one top node")
        return tops[0]

    def supersets(self, i: int) -> list[int]:
        """Indices of nodes strictly containing node i."""
        return self._above[i]

    def __post_init__(self):
        self._refresh()

    def _refresh(self):
        masks = [nd.mask for nd in self.nodes]
        self._above = []
        for i, a in enumerate(masks):
            self._above.append([
                j for j, b in enumerate(masks)
                if j != i and self.nodes[j].order > self.nodes[i].order and not (a & ~b).any()
            ])

    def node_by_order(self, order: int) -> list[LatticeNode]:
        return [nd for nd in self.nodes if nd.order == order]

    def to_json(self) -> dict:
        return {
            "group": self.spec.name,
            "base_generator": str(self.base_generator),
            "symbolic": self.symbolic,
            "nodes": [nd.to_json() for nd in self.nodes],
            "edges": [list(e) for e in self.edges],
        }

    def to_dot(self) -> str:
        lines = ["graph lattice {", "  rankdir=BT;", "  node [shape=box];"]
        for i, nd in enumerate(self.nodes):
            hint = nd.annotations.get("structure_hint", "")
            lines.append(f'  n{i} [label="{hint}\\n|H|={nd.order}, μ={nd.mobius}"];')
        for lo, hi in self.edges:
            lines.append(f"  n{lo} -- n{hi};")
        lines.append("}")
        return "\n".join(lines)


def _candidate_reps(table, mask: np.ndarray, gens: list[tuple[int, ...]], power_maps) -> np.ndarray:
    """One element per orbit of y -> h1 y h2, y -> y^k, restricted to y not in H."""
    maps = []
    for h in gens:
        h_arr = np.asarray(h, dtype=np.int8)
        maps.append(table.index(h_arr[table.perms]))      # y -> y h
        maps.append(table.index(table.perms[:, h_arr]))   # y -> h y
    labels = orbit_labels(maps + list(power_maps), len(table))
    return np.unique(labels[~mask])


def _hasse_edges(nodes: list[LatticeNode], above: list[list[int]]) -> list[tuple[int, int]]:
    edges = []
    for i, sup in enumerate(above):
        sset = set(sup)
        for j in sup:
            if not any(k in sset and j in above[k] for k in sup if k != j):
                edges.append((i, j))
    return edges


def overgroup_lattice(spec: GroupSpec, g: Permutation, caps: Caps = DEFAULT_CAPS,
                      annotate: bool = True) -> SubgroupLattice:
    """All subgroups H with g in H <= G, with Moebius values filled in."""
    from .graph import _power_maps

    spec.check(g)
    if g.is_identity():
        raise InputError("overgroup lattice of the identity is the full subgroup lattice; unsupported")
    if spec.order > caps.lattice_cap:
        raise ResourceError("lattice_cap", caps.lattice_cap, spec.order)
    table = element_table(spec)
    power_maps = _power_maps(spec)
    top_order = spec.order

    base_mask = closure_mask(table, [g.images])
    nodes = [LatticeNode([g], int(base_mask.sum()), fingerprint(base_mask), base_mask)]
    seen = {nodes[0].fingerprint: 0}
    top_mask = np.ones(len(table), dtype=bool)
    work = [0]
    while work:
        i = work.pop()
        node = nodes[i]
        if node.order == top_order:
            continue
        gens = [p.images for p in node.generators]
        for r in _candidate_reps(table, node.mask, gens, power_maps).tolist():
            y = tuple(table.perms[r].tolist())
            chain = StabChain(gens + [y], spec.n, target=top_order)
            if chain.order() >= top_order:
                mask = top_mask
            else:
                mask = closure_mask(table, gens + [y], start=node.mask)
            fp = fingerprint(mask)
            if fp in seen:
                continue
            seen[fp] = len(nodes)
            nodes.append(LatticeNode(node.generators + [Permutation(y)], int(mask.sum()), fp, mask))
            work.append(len(nodes) - 1)
    # order nodes: by order, then fingerprint, for deterministic output
    nodes.sort(key=lambda nd: (nd.order, nd.fingerprint))
    for nd in nodes:
        nd.generators = _reduce_generators(spec, nd)
    lattice = SubgroupLattice(spec, g, nodes, [])
    lattice.edges = _hasse_edges(nodes, lattice._above)
    mobius_values(lattice)
    if annotate:
        annotate_lattice(lattice)
    return lattice


def _reduce_generators(spec: GroupSpec, node: LatticeNode) -> list[Permutation]:
    """Drop redundant adjoined generators (keeps the base generator first)."""
    gens = list(node.generators)
    k = 1
    while k < len(gens):
        trial = gens[:k] + gens[k + 1:]
        if StabChain([p.images for p in trial], spec.n).order() == node.order:
            gens = trial
        else:
            k += 1
    return gens


def mobius_values(lattice: SubgroupLattice) -> SubgroupLattice:
    """mu(G) = 1 and mu(H) = -sum of mu(K) over K strictly containing H."""
    if not lattice.saturated:
        raise InputError("Moebius values need a saturated lattice")
    order = sorted(range(len(lattice.nodes)), key=lambda i: -lattice.nodes[i].order)
    top = lattice.top
    for i in order:
        nd = lattice.nodes[i]
        if i == top:
            nd.mobius = 1
        else:
            nd.mobius = -sum(lattice.nodes[j].mobius for j in lattice.supersets(i))
    return lattice


def defining_sum_residuals(lattice: SubgroupLattice) -> list[int]:
    """sum_{K >= H} mu(K) - [H = G] for every node; all zero when mu is right."""
    top = lattice.top
    out = []
    for i, nd in enumerate(lattice.nodes):
        s = nd.mobius + sum(lattice.nodes[j].mobius for j in lattice.supersets(i))
        out.append(s - (1 if i == top else 0))
    return out


def degree_via_mobius(spec: GroupSpec, g: Permutation, caps: Caps = DEFAULT_CAPS,
                      lattice: SubgroupLattice | None = None) -> int:
    """delta(g) = sum over H containing g of mu(H) |H|.

    The sum counts every x with <g, x> = G.  When G = <g> (only Alt_3 here)
    that includes x = 1 and x = g, which are not edges, so they are removed.
    """
    if lattice is None:
        lattice = overgroup_lattice(spec, g, caps, annotate=False)
    total = sum(nd.mobius * nd.order for nd in lattice.nodes)
    if len(lattice.nodes) == 1:
        total -= 2
    return total


def hio_divisibility(lattice: SubgroupLattice, i: int) -> bool:
    """|N_G(H) : H| divides m(H) mu(H), m(H) the square-free part of |G : G'H|."""
    spec = lattice.spec
    table = element_table(spec)
    nd = lattice.nodes[i]
    n_order = normalizer_order_of(table, nd.mask, [p.images for p in nd.generators])
    index = n_order // nd.order
    derived = derived_subgroup_mask(spec)
    prod_order = _product_order(table, derived, nd.mask)
    m = squarefree_part(spec.order // prod_order)
    nd.annotations["normalizer_index"] = index
    nd.annotations["m"] = m
    return (m * nd.mobius) % index == 0


def _product_order(table, a: np.ndarray, b: np.ndarray) -> int:
    """|AB| = |A||B| / |A ∩ B| (A normal, so AB is a subgroup)."""
    return int(a.sum()) * int(b.sum()) // int((a & b).sum())


def maximal_intersection_check(lattice: SubgroupLattice) -> list[int]:
    """Nodes with nonzero mu that are neither the top nor an intersection of
    maximal nodes of the lattice (should be empty)."""
    top = lattice.top
    maximal = [i for i, _ in enumerate(lattice.nodes) if i != top and lattice.supersets(i) == [top]]
    bad = []
    for i, nd in enumerate(lattice.nodes):
        if i == top or nd.mobius == 0:
            continue
        over = [j for j in maximal if j == i or j in lattice.supersets(i)]
        inter = np.ones_like(nd.mask)
        for j in over:
            inter &= lattice.nodes[j].mask
        if not over or not np.array_equal(inter, nd.mask):
            bad.append(i)
    return bad


# -- annotations -------------------------------------------------------------

def annotate_lattice(lattice: SubgroupLattice) -> None:
    spec = lattice.spec
    g = lattice.base_generator
    m = element_order(g)
    n = spec.n
    table = element_table(spec)
    base_mask = closure_mask(table, [g.images])
    for nd in lattice.nodes:
        cls = block_system(nd.generators, n)
        nd.annotations["transitive"] = cls.kind != "intransitive"
        nd.annotations["primitive"] = cls.kind == "primitive"
        nd.annotations["structure_hint"] = _structure_hint(spec, nd, cls, m, base_mask)


def _structure_hint(spec, nd, cls, m, base_mask) -> str:
    n, order = spec.n, nd.order
    if order == spec.order:
        return spec.name
    if spec.family is Family.SYM and order * 2 == spec.order:
        return f"Alt_{n}"
    if np.array_equal(nd.mask, base_mask):
        return f"C_{m}"
    if cls.kind == "intransitive":
        sizes = sorted((len(o) for o in cls.parts), reverse=True)
        big = sizes[0]
        if sizes[1:] == [1] * (len(sizes) - 1):
            if order == math.factorial(big):
                return f"Sym_{big}"
            if order * 2 == math.factorial(big):
                return f"Alt_{big}"
        if big == m and _is_prime(m) and order % m == 0 and order // m < m:
            return _affine_hint(m, order)
        return "intransitive " + "+".join(map(str, sizes))
    if cls.kind == "primitive":
        if n == m and _is_prime(m) and order % m == 0 and order // m < m:
            return _affine_hint(m, order)
        q = n - 1
        if _is_prime(q) and order == q * (q * q - 1):
            return f"PGL2({q})-like"
        if _is_prime(q) and order * 2 == q * (q * q - 1):
            return f"PSL2({q})-like"
        if n == 7 and order == 168:
            return "PSL2(7)-like"
        return f"primitive order {order}"
    return f"imprimitive order {order}"


def _affine_hint(p: int, order: int) -> str:
    k = order // p
    return f"AGL_1({p})" if k == p - 1 else f"{p}:{k}"


def _is_prime(k: int) -> bool:
    return k > 1 and all(k % d for d in range(2, int(k ** 0.5) + 1))


# -- lattices read off the printed figures --------------------------------------

@dataclass(frozen=True)
class SymbolicNode:
    name: str
    order: int
    mobius: int


@dataclass(frozen=True)
class SymbolicLattice:
    """Nonzero-mu overgroups of a p-cycle as printed in the literature; not enumerated."""

    group: str
    element_order: int
    nodes: tuple[SymbolicNode, ...]
    source: str = "symbolic (orders and mu values transcribed, not computed)"

    def degree(self) -> int:
        return sum(nd.mobius * nd.order for nd in self.nodes)

    def degree_parity(self) -> str:
        return "odd" if self.degree() % 2 else "even"

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "element_order": self.element_order,
            "mode": self.source,
            "nodes": [{"name": nd.name, "order": nd.order, "mobius": nd.mobius} for nd in self.nodes],
            "degree": self.degree(),
            "parity": self.degree_parity(),
        }


M11, M12, M23, M24 = 7920, 95040, 10200960, 244823040


def _psl2(q: int) -> int:
    return q * (q * q - 1) // (2 if q % 2 else 1)


def symbolic_lattices() -> dict[str, SymbolicLattice]:
    fa = math.factorial
    out = {}
    out["Alt_7"] = SymbolicLattice("Alt_7", 7, (
        SymbolicNode("Alt_7", fa(7) // 2, 1),
        SymbolicNode("PSL_2(7)_1", _psl2(7), -1),
        SymbolicNode("PSL_2(7)_2", _psl2(7), -1),
        SymbolicNode("7:3", 21, 1),
    ))
    out["Alt_11"] = SymbolicLattice("Alt_11", 11, (
        SymbolicNode("Alt_11", fa(11) // 2, 1),
        SymbolicNode("(M_11)_1", M11, -1),
        SymbolicNode("(M_11)_2", M11, -1),
        SymbolicNode("11:5", 55, 1),
    ))
    out["Alt_12"] = SymbolicLattice("Alt_12", 11, (
        SymbolicNode("Alt_12", fa(12) // 2, 1),
        SymbolicNode("Alt_11", fa(11) // 2, -1),
        SymbolicNode("(M_12)_1", M12, -1),
        SymbolicNode("(M_12)_2", M12, -1),
        SymbolicNode("PSL_2(11)", _psl2(11), 1),
        SymbolicNode("11:5", 55, 1),
    ))
    out["Alt_23"] = SymbolicLattice("Alt_23", 23, (
        SymbolicNode("Alt_23", fa(23) // 2, 1),
        SymbolicNode("(M_23)_1", M23, -1),
        SymbolicNode("(M_23)_2", M23, -1),
        SymbolicNode("23:11", 253, 1),
    ))
    out["Alt_24"] = SymbolicLattice("Alt_24", 23, (
        SymbolicNode("Alt_24", fa(24) // 2, 1),
        SymbolicNode("Alt_23", fa(23) // 2, -1),
        SymbolicNode("(M_24)_1", M24, -1),
        SymbolicNode("(M_24)_2", M24, -1),
        SymbolicNode("PSL_2(23)", _psl2(23), 1),
        SymbolicNode("23:11", 253, 1),
    ))
    return out


def sym_p_lattice(p: int) -> SymbolicLattice:
    """Nonzero-mu overgroups of a p-cycle in Sym_p (p prime = 3 mod 4, p >= 7)."""
    fa = math.factorial
    return SymbolicLattice(f"Sym_{p}", p, (
        SymbolicNode(f"Sym_{p}", fa(p), 1),
        SymbolicNode(f"Alt_{p}", fa(p) // 2, -1),
        SymbolicNode(f"AGL_1({p})", p * (p - 1), -1),
        SymbolicNode(f"{p}:{(p - 1) // 2}", p * (p - 1) // 2, 1),
    ))


def sym_p_degree_closed_form(p: int) -> int:
    return math.factorial(p) // 2 - p * (p - 1) // 2


def sym_p_plus_1_degree_closed_form(p: int) -> int:
    return math.factorial(p) // 2 * p - p * p * (p - 1) // 2


def sym_p_plus_1_lattice(p: int) -> SymbolicLattice:
    """Nonzero-mu overgroups of a p-cycle in Sym_{p+1}.

    The node set is the printed one; the mu values on it follow from the
    defining sum over that poset (they are not printed).
    """
    fa = math.factorial
    pgl = p * (p * p - 1)
    return SymbolicLattice(f"Sym_{p + 1}", p, (
        SymbolicNode(f"Sym_{p + 1}", fa(p + 1), 1),
        SymbolicNode(f"Alt_{p + 1}", fa(p + 1) // 2, -1),
        SymbolicNode(f"PGL_2({p})", pgl, -1),
        SymbolicNode(f"Sym_{p}", fa(p), -1),
        SymbolicNode(f"PSL_2({p})", pgl // 2, 1),
        SymbolicNode(f"Alt_{p}", fa(p) // 2, 1),
        SymbolicNode(f"AGL_1({p})", p * (p - 1), 1),
        SymbolicNode(f"{p}:{(p - 1) // 2}", p * (p - 1) // 2, -1),
    ), source="symbolic (printed node set, mu from the defining sum)")


def lattice_json(lattice) -> str:
    return json.dumps(lattice.to_json(), indent=2, sort_keys=True)
