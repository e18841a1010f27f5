"""Degrees, parities and Eulerian verdicts for the generating graph Gamma(G).

Neighbour sets are exact: every partner x in G is accounted for.  To keep
Alt_9 / Sym_9 tractable the partners of g are grouped into orbits under
conjugation by C_G(g) and under x -> x^k (k a unit modulo the exponent of
G); both operations preserve <g, x>, so one Schreier-Sims test per orbit
decides the whole orbit.  A vectorized transitivity / parity filter removes
most non-generating partners before any test runs.
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .config import DEFAULT_CAPS, Caps, InputError, ResourceError
from .elements import compose_rows, element_table, invert_rows, orbit_labels, parities
from .groups import (
    ConjugacyClass,
    Family,
    GroupSpec,
    _conjugator,
    centralizer_generators,
    conjugacy_classes,
    enumerate_elements,
    generates_raw,
    normalizer_of_cyclic,
)
from .numtheory import eulerian_predicate, is_prime_3mod4, units
from .perm import Permutation, compose, cycle_shape, element_order, inverse, parity, sym_centralizer_order


# -- neighbour masks -----------------------------------------------------------

def _alt_subgroup_generators(gens: list[Permutation]) -> list[Permutation]:
    """Generators of <gens> ∩ Alt_n via Schreier's lemma with transversal {1, o}."""
    odd = [s for s in gens if parity(s)]
    if not odd:
        return list(gens)
    o = odd[0]
    o_inv = inverse(o)
    out = []
    for s in gens:
        for t in (None, o):
            ts = s if t is None else compose(t, s)
            out.append(ts if parity(ts) == 0 else compose(ts, o_inv))
    return [p for p in dict.fromkeys(out) if not p.is_identity()]


@lru_cache(maxsize=16)
def _power_maps(spec: GroupSpec) -> tuple[np.ndarray, ...]:
    table = element_table(spec)
    exponent = math.lcm(*range(1, spec.n + 1))
    gens = _unit_group_generators(exponent)
    return tuple(table.power_map(k) for k in gens)


def _unit_group_generators(m: int) -> list[int]:
    """A small generating set of (Z/mZ)^*, found greedily."""
    us = units(m)
    gens: list[int] = []
    reached = {1}
    for u in us:
        if u in reached:
            continue
        gens.append(u)
        frontier = list(reached)
        for r in frontier:
            x = r * u % m
            if x not in reached:
                reached.add(x)
                frontier.append(x)
        # close under all chosen generators
        frontier = list(reached)
        for r in frontier:
            for gg in gens:
                x = r * gg % m
                if x not in reached:
                    reached.add(x)
                    frontier.append(x)
        if len(reached) == len(us):
            break
    return gens


def _transitive_with(table, g_img: np.ndarray) -> np.ndarray:
    """Bool per element x: is <g, x> transitive on the points?"""
    perms = table.perms
    n = perms.shape[1]
    g_inv = np.argsort(g_img)
    x_inv = invert_rows(perms)
    reach = np.zeros(perms.shape, dtype=bool)
    reach[:, 0] = True
    for _ in range(n):
        new = reach | reach[:, g_inv] | np.take_along_axis(reach, x_inv.astype(np.intp), axis=1)
        if np.array_equal(new, reach):
            break
        reach = new
    return reach.all(axis=1)


def neighbor_mask(spec: GroupSpec, g: Permutation, caps: Caps = DEFAULT_CAPS) -> np.ndarray:
    """Boolean mask over the element table: x is adjacent to g in Gamma(G)."""
    spec.check(g)
    if g.is_identity():
        raise InputError("the identity is not a vertex of the generating graph")
    if spec.n > caps.enumeration_cap:
        raise ResourceError("enumeration_cap", caps.enumeration_cap, spec.n,
                            "use predicate-only or class-level modes")
    return _neighbor_mask_cached(spec, g).copy()


@lru_cache(maxsize=64)
def _neighbor_mask_cached(spec: GroupSpec, g: Permutation) -> np.ndarray:
    table = element_table(spec)
    g_img = np.asarray(g.images, dtype=np.int8)
    g_idx = table.index_of(g.images)
    candidate = _transitive_with(table, g_img)
    if spec.family is Family.SYM and parity(g) == 0:
        candidate &= parities(table.perms) == 1
    candidate[table.identity_index] = False

    cgens = centralizer_generators(g)
    if spec.family is Family.ALT:
        cgens = _alt_subgroup_generators(cgens)
    maps = [table.conjugation_map(c.images) for c in cgens] + list(_power_maps(spec))
    labels = orbit_labels(maps, len(table))

    reps = np.unique(labels[candidate])
    ok = np.zeros(len(table), dtype=bool)
    a = g.images
    for r in reps.tolist():
        x = tuple(table.perms[r].tolist())
        # x == g can only share an orbit with powers of g; decide on another member
        if r == g_idx:
            members = np.flatnonzero(labels == r)
            others = members[members != g_idx]
            if not len(others):
                continue
            x = tuple(table.perms[others[0]].tolist())
        if generates_raw(spec, a, x):
            ok[r] = True
    mask = ok[labels] & candidate
    mask[g_idx] = False
    return mask


def neighbors(spec: GroupSpec, g: Permutation, caps: Caps = DEFAULT_CAPS) -> list[Permutation]:
    table = element_table(spec)
    return [Permutation(tuple(table.perms[i].tolist())) for i in np.flatnonzero(neighbor_mask(spec, g, caps))]


def degree(spec: GroupSpec, g: Permutation, caps: Caps = DEFAULT_CAPS, method: str = "orbits") -> int:
    """delta(g): number of x in G with g != x and <g, x> = G.

    ``method="scan"`` tests every partner individually (slow, n <= 7 advised);
    ``"orbits"`` uses the orbit-reduced exact count.
    """
    if method == "scan":
        spec.check(g)
        if g.is_identity():
            raise InputError("the identity is not a vertex of the generating graph")
        if spec.n > caps.enumeration_cap:
            raise ResourceError("enumeration_cap", caps.enumeration_cap, spec.n)
        return sum(
            1 for x in enumerate_elements(spec, caps)
            if not x.is_identity() and generates_raw(spec, g.images, x.images)
        )
    if method != "orbits":
        raise InputError(f"unknown degree method {method!r}")
    return int(neighbor_mask(spec, g, caps).sum())


def involution_parity_check(spec: GroupSpec, g: Permutation, caps: Caps = DEFAULT_CAPS) -> tuple[int, int]:
    """(delta(g) mod 2, number of involution neighbours mod 2); these always agree."""
    mask = neighbor_mask(spec, g, caps)
    orders = _orders(spec)
    return int(mask.sum()) % 2, int((mask & (orders == 2)).sum()) % 2


def involution_neighbors(spec: GroupSpec, g: Permutation, caps: Caps = DEFAULT_CAPS) -> int:
    return int((neighbor_mask(spec, g, caps) & (_orders(spec) == 2)).sum())


@lru_cache(maxsize=16)
def _orders(spec: GroupSpec) -> np.ndarray:
    return element_table(spec).orders()


def aut_centralizer_order(spec: GroupSpec, g: Permutation) -> int:
    """|C_Aut(G)(g)| with Aut(G) realized as Sym_n acting by conjugation (n != 6).

    Alt_3 is cyclic of order 3: its automorphism group is inversion only,
    which fixes no element of order 3.
    """
    if spec.n == 6:
        raise InputError("Aut(G) is larger than Sym_6 acting by conjugation")
    if spec.family is Family.ALT and spec.n == 3:
        return 1 if not g.is_identity() else 2
    return sym_centralizer_order(cycle_shape(g))


# -- predictions -------------------------------------------------------------

def predicted_odd(spec: GroupSpec, g: Permutation) -> bool:
    """delta(g) is odd iff |g| = p for a prime p = 3 mod 4 with p in {n, n-1}."""
    m = element_order(g)
    return m in (spec.n, spec.n - 1) and m >= 3 and is_prime_3mod4(m)


@dataclass(frozen=True)
class CriterionVerdict:
    certified: bool
    epsilon: int
    normalizer_order: int

    @property
    def label(self) -> str:
        return "even_certified" if self.certified else "inconclusive"


def even_degree_criterion(spec: GroupSpec, g: Permutation, caps: Caps = DEFAULT_CAPS) -> CriterionVerdict:
    """If 2^epsilon divides |N_G(<g>)| then delta(g) is even (epsilon = 1 iff G^ab is odd)."""
    report = normalizer_of_cyclic(spec, g, caps)
    eps = 1 if spec.abelianization_order() % 2 else 2
    return CriterionVerdict(report.normalizer_order % 2 ** eps == 0, eps, report.normalizer_order)


# -- degree tables -------------------------------------------------------------

PREDICTION_SOURCES = ("classification", "normalizer_criterion", "none")


@dataclass(frozen=True)
class DegreeRow:
    representative: Permutation
    label: str
    shape: tuple[int, ...]
    class_size: int
    degree: int
    predicted_parity: str
    prediction_source: str = "classification"

    @property
    def parity(self) -> str:
        return "odd" if self.degree % 2 else "even"

    def to_json(self) -> dict:
        return {
            "class": self.label,
            "representative": str(self.representative),
            "shape": list(self.shape),
            "class_size": self.class_size,
            "degree": self.degree,
            "parity": self.parity,
            "predicted_parity": self.predicted_parity,
            "source": self.prediction_source,
        }


@dataclass(frozen=True)
class DegreeReport:
    spec: GroupSpec
    rows: tuple[DegreeRow, ...]

    def __post_init__(self):
        if sum(r.class_size * r.degree for r in self.rows) % 2:
            raise AssertionError("handshake violated: odd sum of degrees")

    @property
    def edge_count(self) -> int:
        return sum(r.class_size * r.degree for r in self.rows) // 2

    def odd_rows(self) -> list[DegreeRow]:
        return [r for r in self.rows if r.parity == "odd"]

    def odd_vertex_count(self) -> int:
        return sum(r.class_size for r in self.odd_rows())

    def mismatches(self) -> list[DegreeRow]:
        return [r for r in self.rows if r.prediction_source != "none" and r.parity != r.predicted_parity]

    def to_json(self) -> dict:
        return {
            "group": self.spec.name,
            "family": self.spec.family.value,
            "n": self.spec.n,
            "order": self.spec.order,
            "edge_count": self.edge_count,
            "rows": [r.to_json() for r in self.rows],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["shape", "class_size", "degree", "parity", "predicted_parity", "source"])
        for r in self.rows:
            w.writerow([r.label, r.class_size, r.degree, r.parity, r.predicted_parity, r.prediction_source])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"Gamma({self.spec.name}): |G| = {self.spec.order}, edges = {self.edge_count}"]
        lines.append(f"{'class':<12}{'rep':<28}{'size':>8}{'δ(g)':>10}  parity  predicted")
        for r in self.rows:
            lines.append(f"{r.label:<12}{str(r.representative):<28}{r.class_size:>8}{r.degree:>10}  "
                         f"{r.parity:<6}  {r.predicted_parity}")
        return "\n".join(lines)


def _class_degree_job(args):
    family, n, images, enum_cap = args
    spec = GroupSpec(Family(family), n)
    return degree(spec, Permutation(images), Caps(enumeration_cap=enum_cap))


def degree_table(spec: GroupSpec, caps: Caps = DEFAULT_CAPS, threads: int | None = None) -> DegreeReport:
    """One row per nontrivial conjugacy class, degrees computed on the representative."""
    if spec.n > caps.enumeration_cap:
        raise ResourceError("enumeration_cap", caps.enumeration_cap, spec.n)
    classes = [c for c in conjugacy_classes(spec, caps) if not c.representative.is_identity()]
    threads = threads or caps.threads
    jobs = [(spec.family.value, spec.n, c.representative.images, caps.enumeration_cap) for c in classes]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            degrees = list(pool.map(_class_degree_job, jobs))
    else:
        degrees = [_class_degree_job(j) for j in jobs]
    rows = []
    for c, d in zip(classes, degrees):
        pred = "odd" if predicted_odd(spec, c.representative) else "even"
        rows.append(DegreeRow(c.representative, c.label, c.shape.parts, c.size, d, pred))
    return DegreeReport(spec, tuple(rows))


# -- connectivity and Euler circuits ----------------------------------------

@dataclass(frozen=True)
class Empirical:
    connected: bool
    all_even: bool
    odd_witness: Permutation | None
    component_count: int
    isolated_count: int = 0

    def to_json(self) -> dict:
        return {
            "connected": self.connected,
            "all_even": self.all_even,
            "odd_witness": None if self.odd_witness is None else str(self.odd_witness),
            "component_count": self.component_count,
            "isolated_count": self.isolated_count,
        }


@dataclass(frozen=True)
class EulerVerdict:
    spec: GroupSpec
    predicted_eulerian: bool
    empirical: Empirical | None = None
    circuit: tuple[Permutation, ...] | None = None
    notes: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "group": self.spec.name,
            "predicted_eulerian": self.predicted_eulerian,
            "empirical": None if self.empirical is None else self.empirical.to_json(),
            "circuit_edges": None if self.circuit is None else len(self.circuit) - 1,
            "notes": list(self.notes),
        }


class GraphView:
    """On-demand adjacency of Gamma(G) over element-table indices.

    Only one neighbour mask per cycle shape is ever computed; the mask of any
    other vertex is obtained by transporting it along a conjugating element
    of Sym_n (conjugation by Sym_n is an automorphism of Alt_n as well).
    """

    def __init__(self, spec: GroupSpec, caps: Caps = DEFAULT_CAPS):
        self.spec, self.caps = spec, caps
        self.table = element_table(spec)
        self._memo: dict[int, np.ndarray] = {}

    def vertices(self) -> np.ndarray:
        return np.arange(1, len(self.table))

    def element(self, i: int) -> Permutation:
        return Permutation(tuple(self.table.perms[i].tolist()))

    def mask(self, i: int) -> np.ndarray:
        if i in self._memo:
            return self._memo[i]
        v = self.element(i)
        rep = cycle_shape(v).representative()
        base = neighbor_mask(self.spec, rep, self.caps)
        s = _conjugator(rep, v)  # s^-1 rep s = v
        # x ~ v  <=>  s x s^-1 ~ rep
        back = self.table.conjugation_map(inverse(s).images)
        m = base[back]
        self._memo[i] = m
        return m


def connectivity(spec: GroupSpec, caps: Caps = DEFAULT_CAPS) -> tuple[int, int]:
    """(component count, isolated vertex count) by BFS over on-demand adjacency."""
    if spec.n > caps.connectivity_cap:
        raise ResourceError("connectivity_cap", caps.connectivity_cap, spec.n)
    view = GraphView(spec, caps)
    total = len(view.table)
    visited = np.zeros(total, dtype=bool)
    visited[view.table.identity_index] = True
    components = isolated = 0
    while not visited.all():
        start = int(np.flatnonzero(~visited)[0])
        components += 1
        visited[start] = True
        queue = deque([start])
        size = 1
        while queue and not visited.all():
            v = queue.popleft()
            new = view.mask(v) & ~visited
            idx = np.flatnonzero(new)
            visited[idx] = True
            size += len(idx)
            queue.extend(idx.tolist())
        if size == 1:
            isolated += 1
    return components, isolated


def edge_list(spec: GroupSpec, caps: Caps = DEFAULT_CAPS) -> list[tuple[int, int]]:
    """All edges (i < j) of Gamma(G) as element-table index pairs."""
    view = GraphView(spec, caps)
    edges = []
    for i in view.vertices().tolist():
        for j in np.flatnonzero(view.mask(i)).tolist():
            if i < j:
                edges.append((i, j))
    return edges


def euler_circuit(spec: GroupSpec, caps: Caps = DEFAULT_CAPS) -> list[int]:
    """Hierholzer: start at the least vertex, always take the least unused edge.

    Returns the closed vertex sequence (first == last) as table indices.
    """
    if spec.n > caps.circuit_cap:
        raise ResourceError("circuit_cap", caps.circuit_cap, spec.n)
    edges = edge_list(spec, caps)
    adj: dict[int, list[int]] = {}
    for i, j in edges:
        adj.setdefault(i, []).append(j)
        adj.setdefault(j, []).append(i)
    if any(len(v) % 2 for v in adj.values()):
        raise InputError(f"Gamma({spec.name}) has odd-degree vertices; no Euler circuit")
    for v in adj.values():
        v.sort(reverse=True)       # pop() yields the least neighbour
    used: set[tuple[int, int]] = set()
    start = min(adj)
    stack, circuit = [start], []
    while stack:
        v = stack[-1]
        nbrs = adj[v]
        while nbrs and (min(v, nbrs[-1]), max(v, nbrs[-1])) in used:
            nbrs.pop()
        if nbrs:
            w = nbrs.pop()
            used.add((min(v, w), max(v, w)))
            stack.append(w)
        else:
            circuit.append(stack.pop())
    circuit.reverse()
    if len(circuit) - 1 != len(edges):
        raise AssertionError("graph is not connected; circuit misses edges")
    return circuit


def circuit_covers_edges(circuit: list[int], edges: list[tuple[int, int]]) -> bool:
    """Closed walk using each edge of ``edges`` exactly once."""
    if not circuit or circuit[0] != circuit[-1]:
        return False
    walked = Counter((min(a, b), max(a, b)) for a, b in zip(circuit, circuit[1:]))
    return walked == Counter(edges)


def euler_verdict(spec: GroupSpec, mode: str = "predicate_only", caps: Caps = DEFAULT_CAPS) -> EulerVerdict:
    """Eulerian verdict: always the arithmetic predicate, optionally backed by computation.

    ``empirical`` adds class-level parities and a BFS component count;
    ``with_circuit`` additionally emits a Hierholzer circuit when one should exist.
    """
    predicted = eulerian_predicate(spec.n)
    if mode == "predicate_only":
        notes = () if spec.n <= caps.connectivity_cap else (
            "connectivity for n > cap is taken from the literature (diameter 2 for n > 4)",)
        return EulerVerdict(spec, predicted, notes=notes)
    if mode not in ("empirical", "with_circuit"):
        raise InputError(f"unknown mode {mode!r}")
    if spec.n > caps.connectivity_cap:
        raise ResourceError("connectivity_cap", caps.connectivity_cap, spec.n, "use predicate_only")
    if mode == "with_circuit" and spec.n > caps.circuit_cap:
        raise ResourceError("circuit_cap", caps.circuit_cap, spec.n)
    table = degree_table(spec, caps)
    odd = table.odd_rows()
    components, isolated = connectivity(spec, caps)
    emp = Empirical(components == 1, not odd, odd[0].representative if odd else None,
                    components, isolated)
    circuit = None
    if mode == "with_circuit" and predicted and emp.connected and emp.all_even:
        view_table = element_table(spec)
        idx = euler_circuit(spec, caps)
        circuit = tuple(Permutation(tuple(view_table.perms[i].tolist())) for i in idx)
    return EulerVerdict(spec, predicted, emp, circuit)


def circuit_json(circuit) -> str:
    return json.dumps([str(p) for p in circuit])
