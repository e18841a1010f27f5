"""Alt_n and Sym_n as computable groups.

Enumeration, subgroup orders via stabilizer chains, the generation test
behind the generating graph, conjugacy classes, normalizers of cyclic
subgroups and block systems.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterator, Sequence

from .config import DEFAULT_CAPS, Caps, InputError, MembershipError, ResourceError
from .numtheory import euler_phi, units
from .perm import (
    MAX_DEGREE,
    CycleShape,
    Permutation,
    all_cycles,
    check_degree,
    compose,
    conjugate,
    cycle_shape,
    element_order,
    parity,
    partitions,
    power,
    sym_centralizer_order,
)
from .schreier import StabChain, orbit


class Family(str, enum.Enum):
    ALT = "alt"
    SYM = "sym"

    @property
    def title(self) -> str:
        return "Alt" if self is Family.ALT else "Sym"


@dataclass(frozen=True, order=True)
class GroupSpec:
    family: Family
    n: int

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if not 3 <= self.n <= MAX_DEGREE:
            raise InputError(f"n must lie in 3..{MAX_DEGREE}, got {self.n}")

    @classmethod
    def alt(cls, n: int) -> "GroupSpec":
        return cls(Family.ALT, n)

    @classmethod
    def sym(cls, n: int) -> "GroupSpec":
        return cls(Family.SYM, n)

    @property
    def order(self) -> int:
        f = math.factorial(self.n)
        return f // 2 if self.family is Family.ALT else f

    @property
    def name(self) -> str:
        return f"{self.family.title}_{self.n}"

    def __str__(self) -> str:
        return self.name

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.n:
            return False
        return self.family is Family.SYM or parity(p) == 0

    def check(self, *perms: Permutation) -> None:
        for p in perms:
            if p.degree != self.n:
                raise MembershipError(f"{p} has degree {p.degree}, expected {self.n}")
            if not self.contains(p):
                raise MembershipError(f"{p} is odd, so not in {self.name}")

    def generators(self) -> list[Permutation]:
        n = self.n
        if self.family is Family.SYM:
            return [Permutation.from_cycles([(1, 2)], n), Permutation.from_cycles([range(1, n + 1)], n)]
        return [Permutation.from_cycles([(1, 2, k)], n) for k in range(3, n + 1)]

    def epsilon(self) -> int:
        """1 if the abelianization has odd order (Alt_n), 2 for Sym_n."""
        return 1 if self.family is Family.ALT else 2

    def abelianization_order(self) -> int:
        if self.family is Family.SYM:
            return 2
        return 3 if self.n in (3, 4) else 1


def enumerate_elements(spec: GroupSpec, caps: Caps = DEFAULT_CAPS) -> Iterator[Permutation]:
    """Every element exactly once, in lexicographic order of image tuples."""
    if spec.n > caps.enumeration_cap:
        raise ResourceError("enumeration_cap", caps.enumeration_cap, spec.n)
    for img in permutations(range(spec.n)):
        p = Permutation(img)
        if spec.family is Family.SYM or parity(p) == 0:
            yield p


def subgroup_order(generators: Sequence[Permutation]) -> int:
    if not generators:
        return 1
    n = check_degree(*generators)
    return StabChain([g.images for g in generators], n).order()


def generates_raw(spec: GroupSpec, a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    """Generation test on raw 0-based tuples; no membership checks."""
    if a == b:
        return False
    if len(orbit((a, b), 0)) != spec.n:
        return False
    return StabChain((a, b), spec.n, target=spec.order).order() >= spec.order


def generates(spec: GroupSpec, g: Permutation, x: Permutation) -> bool:
    """Adjacency in the generating graph: g != x and <g, x> = G."""
    spec.check(g, x)
    return generates_raw(spec, g.images, x.images)


# -- conjugacy classes -------------------------------------------------------

@dataclass(frozen=True)
class ConjugacyClass:
    representative: Permutation
    size: int
    shape: CycleShape
    label: str

    @property
    def order(self) -> int:
        return self.shape.order


def centralizer_generators(g: Permutation) -> list[Permutation]:
    """Generators of C_{Sym_n}(g): each cycle of g, plus swaps of equal-length cycles."""
    n = g.degree
    cycles = all_cycles(g)
    gens = [Permutation.from_cycles([c], n) for c in cycles if len(c) > 1]
    by_len: dict[int, list[tuple[int, ...]]] = {}
    for c in cycles:
        by_len.setdefault(len(c), []).append(c)
    for same in by_len.values():
        for c1, c2 in zip(same, same[1:]):
            img = list(range(n))
            for a, b in zip(c1, c2):
                img[a - 1], img[b - 1] = b - 1, a - 1
            gens.append(Permutation(tuple(img)))
    return gens


def sym_class_splits_in_alt(g: Permutation) -> bool:
    """True iff C_{Sym_n}(g) <= Alt_n, i.e. the Sym-class of even g splits in two."""
    return parity(g) == 0 and all(parity(c) == 0 for c in centralizer_generators(g))


def _shape_classes(spec: GroupSpec) -> list[ConjugacyClass]:
    out = []
    swap = Permutation.from_cycles([(1, 2)], spec.n)
    for parts in reversed(list(partitions(spec.n))):
        shape = CycleShape(parts)
        rep = shape.representative()
        size = math.factorial(spec.n) // sym_centralizer_order(shape)
        label = shape.label()
        if spec.family is Family.SYM:
            out.append(ConjugacyClass(rep, size, shape, label))
        elif shape.parity == 0:
            if sym_class_splits_in_alt(rep):
                out.append(ConjugacyClass(rep, size // 2, shape, label + "a"))
                out.append(ConjugacyClass(conjugate(rep, swap), size // 2, shape, label + "b"))
            else:
                out.append(ConjugacyClass(rep, size, shape, label))
    return out


def _orbit_classes(spec: GroupSpec) -> list[ConjugacyClass]:
    from .elements import element_table, orbit_labels

    table = element_table(spec)
    maps = [table.conjugation_map(s.images) for s in spec.generators()]
    labels = orbit_labels(maps, len(table))
    sizes: dict[int, int] = {}
    for lab in labels.tolist():
        sizes[lab] = sizes.get(lab, 0) + 1
    out = []
    swap = Permutation.from_cycles([(1, 2)], spec.n)
    for parts in reversed(list(partitions(spec.n))):
        shape = CycleShape(parts)
        if spec.family is Family.ALT and shape.parity:
            continue
        rep = shape.representative()
        lab = int(labels[table.index_of(rep.images)])
        total = math.factorial(spec.n) // sym_centralizer_order(shape)
        if sizes[lab] == total or spec.family is Family.SYM:
            out.append(ConjugacyClass(rep, sizes[lab], shape, shape.label()))
        else:
            other = conjugate(rep, swap)
            lab2 = int(labels[table.index_of(other.images)])
            if lab2 == lab:
                raise AssertionError("split class expected for " + str(shape))
            out.append(ConjugacyClass(rep, sizes[lab], shape, shape.label() + "a"))
            out.append(ConjugacyClass(other, sizes[lab2], shape, shape.label() + "b"))
    if sum(c.size for c in out) != len(table):
        raise AssertionError("classes do not partition the group")
    return out


def conjugacy_classes(
    spec: GroupSpec, caps: Caps = DEFAULT_CAPS, method: str = "auto"
) -> list[ConjugacyClass]:
    """Conjugacy classes ordered by cycle shape, identity first.

    ``method``: "orbits" enumerates conjugation orbits over the element table,
    "shapes" uses cycle types plus the Alt splitting test; "auto" picks orbits
    for n <= 7.
    """
    if spec.n > caps.enumeration_cap:
        raise ResourceError("enumeration_cap", caps.enumeration_cap, spec.n)
    if method == "auto":
        method = "orbits" if spec.n <= 7 else "shapes"
    if method == "orbits":
        return _orbit_classes(spec)
    if method == "shapes":
        return _shape_classes(spec)
    raise InputError(f"unknown class method {method!r}")


def class_of(spec: GroupSpec, g: Permutation, classes: list[ConjugacyClass]) -> ConjugacyClass:
    """The class in ``classes`` containing g."""
    shape = cycle_shape(g)
    cands = [c for c in classes if c.shape == shape]
    if len(cands) == 1:
        return cands[0]
    if not cands:
        raise MembershipError(f"{g} not in {spec.name}")
    # split Alt class: g ~ rep iff any conjugator rep -> g is even
    s = _conjugator(cands[0].representative, g)
    return cands[0] if parity(s) == 0 else cands[1]


def _conjugator(a: Permutation, b: Permutation) -> Permutation:
    """Some s with s^-1 a s = b (a, b of equal cycle shape)."""
    ca = sorted(all_cycles(a), key=len)
    cb = sorted(all_cycles(b), key=len)
    if [len(c) for c in ca] != [len(c) for c in cb]:
        raise InputError("different cycle shapes")
    img = [0] * a.degree
    for x, y in zip(ca, cb):
        for p, q in zip(x, y):
            img[p - 1] = q - 1
    return Permutation(tuple(img))


# -- normalizers of cyclic subgroups -----------------------------------------

@dataclass(frozen=True)
class NormalizerReport:
    generator: Permutation
    m: int
    centralizer_order: int
    normalizer_order: int
    power_images: frozenset[int]
    ell: int          # phi(m) / |power_images|: index of the realized units
    method: str = field(compare=False)

    def to_json(self) -> dict:
        return {
            "generator": str(self.generator),
            "m": self.m,
            "centralizer_order": self.centralizer_order,
            "normalizer_order": self.normalizer_order,
            "power_images": sorted(self.power_images),
            "ell": self.ell,
            "method": self.method,
        }


def power_conjugator(g: Permutation, i: int) -> Permutation:
    """An s in Sym_n with s^-1 g s = g^i, for i a unit mod |g|.

    On each cycle (c_0 ... c_{l-1}) of g, s sends c_k to c_{k*i mod l}.
    """
    img = list(range(g.degree))
    for cyc in all_cycles(g):
        ell = len(cyc)
        for k, pt in enumerate(cyc):
            img[pt - 1] = cyc[(k * i) % ell] - 1
    return Permutation(tuple(img))


def _normalizer_constructive(spec: GroupSpec, g: Permutation) -> NormalizerReport:
    m = element_order(g)
    c_sym = sym_centralizer_order(cycle_shape(g))
    realized = set()
    for i in units(m):
        s = power_conjugator(g, i)
        if conjugate(g, s) != power(g, i):
            raise AssertionError("conjugator construction failed")
        if spec.family is Family.SYM or parity(s) == 0:
            realized.add(i)
    if spec.family is Family.SYM:
        c_order = c_sym
    elif sym_class_splits_in_alt(g):
        c_order = c_sym
    else:
        # C_S(g) has an odd element: every unit is realized by an even conjugator
        c_order = c_sym // 2
        realized = set(units(m))
    phi = euler_phi(m)
    return NormalizerReport(g, m, c_order, c_order * len(realized), frozenset(realized),
                            phi // len(realized), "constructive")


def _normalizer_scan(spec: GroupSpec, g: Permutation) -> NormalizerReport:
    import numpy as np

    from .elements import compose_rows, element_table, invert_rows

    table = element_table(spec)
    m = element_order(g)
    S = table.perms
    gimg = np.asarray(g.images, dtype=np.int8)
    conj = compose_rows(compose_rows(invert_rows(S), gimg), S)
    n = spec.n
    weights = n ** np.arange(n, dtype=np.int64)
    codes = conj.astype(np.int64) @ weights
    power_codes = {int(np.asarray(power(g, i).images, dtype=np.int64) @ weights): i for i in range(m)}
    in_cyclic = np.isin(codes, np.array(list(power_codes), dtype=np.int64))
    hit = codes[in_cyclic]
    found = {power_codes[int(c)] for c in np.unique(hit)}
    g_code = int(np.asarray(g.images, dtype=np.int64) @ weights)
    c_order = int((codes == g_code).sum())
    n_order = int(in_cyclic.sum())
    return NormalizerReport(g, m, c_order, n_order, frozenset(found),
                            euler_phi(m) // len(found), "scan")


def normalizer_of_cyclic(
    spec: GroupSpec, g: Permutation, caps: Caps = DEFAULT_CAPS, method: str = "auto"
) -> NormalizerReport:
    """|N_G(<g>)|, |C_G(g)| and the units i with g ~ g^i inside G.

    "scan" tests every s in G; "constructive" builds one conjugator per unit
    and checks its parity.  "auto" scans for n <= scan_cap.
    """
    spec.check(g)
    if g.is_identity():
        raise InputError("normalizer of the trivial subgroup is not supported")
    if method == "auto":
        method = "scan" if spec.n <= caps.scan_cap else "constructive"
    if method == "scan":
        if spec.n > caps.scan_cap:
            raise ResourceError("scan_cap", caps.scan_cap, spec.n)
        return _normalizer_scan(spec, g)
    if method == "constructive":
        return _normalizer_constructive(spec, g)
    raise InputError(f"unknown normalizer method {method!r}")


# -- block systems -----------------------------------------------------------

@dataclass(frozen=True)
class BlockClassification:
    kind: str                                   # intransitive | imprimitive | primitive
    parts: tuple[frozenset[int], ...] = ()      # orbits or blocks, 1-based

    def to_json(self) -> dict:
        return {"kind": self.kind, "parts": [sorted(b) for b in self.parts]}


def _minimal_block(gens: Sequence[tuple[int, ...]], n: int, a: int, b: int) -> list[int]:
    """Union-find closure of the block system generated by {a, b}; returns labels."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue = [(a, b)]
    parent[find(b)] = find(a)
    while queue:
        x, y = queue.pop()
        for s in gens:
            rx, ry = find(s[x]), find(s[y])
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
                queue.append((rx, ry))
    return [find(x) for x in range(n)]


def block_system(generators: Sequence[Permutation], n: int) -> BlockClassification:
    """Classify <generators> on {1..n} as intransitive, imprimitive or primitive.

    For transitive groups the smallest nontrivial block containing point 1 is
    returned (ties broken by the least partner point).
    """
    gens = [g.images for g in generators]
    for g in gens:
        if len(g) != n:
            raise InputError("generator degree mismatch")
    if not gens:
        gens = [tuple(range(n))]
    seen: set[int] = set()
    orbits = []
    for p in range(n):
        if p not in seen:
            orb = orbit(gens, p)
            seen.update(orb)
            orbits.append(frozenset(x + 1 for x in orb))
    if len(orbits) > 1:
        return BlockClassification("intransitive", tuple(orbits))
    best = None
    for j in range(1, n):
        labels = _minimal_block(gens, n, 0, j)
        size = labels.count(labels[0])
        if size < n and (best is None or size < best[0]):
            best = (size, labels)
    if best is None:
        return BlockClassification("primitive")
    labels = best[1]
    blocks: dict[int, set[int]] = {}
    for x, lab in enumerate(labels):
        blocks.setdefault(lab, set()).add(x + 1)
    parts = tuple(sorted((frozenset(b) for b in blocks.values()), key=min))
    return BlockClassification("imprimitive", parts)
