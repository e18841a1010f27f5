import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gengraph.config import Caps, InputError, MembershipError, ResourceError
from gengraph.groups import (
    Family,
    GroupSpec,
    block_system,
    conjugacy_classes,
    enumerate_elements,
    generates,
    normalizer_of_cyclic,
    power_conjugator,
    subgroup_order,
)
from gengraph.numtheory import euler_phi
from gengraph.perm import Permutation, conjugate, cycle_shape, element_order, parity, power, sym_centralizer_order

from conftest import group_elements

P = Permutation.parse


@pytest.mark.parametrize("spec, count", [(GroupSpec.sym(3), 6), (GroupSpec.alt(4), 12), (GroupSpec.alt(7), 2520)])
def test_enumerate_elements(spec, count):
    elems = list(enumerate_elements(spec))
    assert len(elems) == len(set(elems)) == count == spec.order
    if spec.family is Family.ALT:
        assert all(parity(p) == 0 for p in elems)


def test_enumeration_cap():
    with pytest.raises(ResourceError, match="enumeration_cap"):
        next(enumerate_elements(GroupSpec.sym(10)))


def test_group_spec_validation():
    with pytest.raises(InputError):
        GroupSpec.sym(2)
    assert GroupSpec.alt(7).name == "Alt_7"
    assert GroupSpec.alt(5).order == 60


def test_subgroup_order_examples():
    assert subgroup_order([P("(1 2)", 4), P("(1 2 3 4)", 4)]) == 24
    assert subgroup_order([P("(1 2)(3 4)", 4), P("(1 3)(2 4)", 4)]) == 4
    assert subgroup_order([P("(1 2 3 4 5 6 7)", 7)]) == 7
    assert subgroup_order([]) == 1


@pytest.mark.parametrize("spec", [GroupSpec.sym(5), GroupSpec.alt(6)])
def test_closure_sanity(spec):
    assert subgroup_order(list(enumerate_elements(spec))[:40] + spec.generators()) == spec.order


def test_generates_examples():
    assert generates(GroupSpec.sym(3), P("(1 2 3)", 3), P("(1 2)", 3))
    assert not generates(GroupSpec.alt(4), P("(1 2)(3 4)", 4), P("(1 3)(2 4)", 4))
    g = P("(1 2 3 4 5)", 5)
    assert not generates(GroupSpec.alt(5), g, g)


def test_generates_checks_membership():
    with pytest.raises(MembershipError):
        generates(GroupSpec.alt(4), P("(1 2)", 4), P("(1 2 3)", 4))


@settings(max_examples=40)
@given(st.sampled_from([GroupSpec.sym(5), GroupSpec.alt(6), GroupSpec.sym(6)]), st.data())
def test_generates_symmetric_and_conjugation_invariant(spec, data):
    g = data.draw(group_elements(spec))
    x = data.draw(group_elements(spec))
    s = data.draw(group_elements(spec))
    assert generates(spec, g, x) == generates(spec, x, g)
    assert generates(spec, g, x) == generates(spec, conjugate(g, s), conjugate(x, s))


def test_class_examples():
    assert sorted(c.size for c in conjugacy_classes(GroupSpec.sym(4))) == sorted([1, 6, 3, 8, 6])
    a5 = conjugacy_classes(GroupSpec.alt(5))
    assert len(a5) == 5
    assert sorted(c.size for c in a5 if c.shape.parts == (5,)) == [12, 12]
    assert sorted(c.size for c in conjugacy_classes(GroupSpec.sym(3))) == [1, 2, 3]


@pytest.mark.parametrize("spec", [GroupSpec(f, n) for f in Family for n in range(3, 8)])
def test_classes_partition_group(spec):
    classes = conjugacy_classes(spec)
    assert sum(c.size for c in classes) == spec.order
    assert len({c.label for c in classes}) == len(classes)
    assert all(spec.contains(c.representative) for c in classes)


@pytest.mark.parametrize("spec", [GroupSpec(f, n) for f in Family for n in range(3, 8)])
def test_orbit_and_shape_class_methods_agree(spec):
    a = conjugacy_classes(spec, method="orbits")
    b = conjugacy_classes(spec, method="shapes")
    assert [(c.label, c.size) for c in a] == [(c.label, c.size) for c in b]


def test_alt_split_rule():
    # split iff all cycle lengths distinct and odd
    for c in conjugacy_classes(GroupSpec.sym(8), method="shapes"):
        parts = c.shape.parts
        split = len(set(parts)) == len(parts) and all(p % 2 for p in parts)
        alt = [d for d in conjugacy_classes(GroupSpec.alt(8)) if d.shape == c.shape]
        if c.shape.parity == 0:
            assert len(alt) == (2 if split else 1)


def test_normalizer_examples():
    r = normalizer_of_cyclic(GroupSpec.sym(7), P("(1 2 3 4 5 6 7)", 7))
    assert r.normalizer_order == 42 and r.centralizer_order == 7
    r = normalizer_of_cyclic(GroupSpec.alt(4), P("(1 2 3)", 4))
    assert r.normalizer_order == 3 and r.ell == 2
    g = Permutation.from_cycles([range(1, 10), range(10, 13)], 12)
    r = normalizer_of_cyclic(GroupSpec.alt(12), g)
    assert r.method == "constructive" and r.normalizer_order == 81


def test_normalizer_errors():
    with pytest.raises(InputError):
        normalizer_of_cyclic(GroupSpec.sym(4), Permutation.identity(4))
    with pytest.raises(ResourceError):
        normalizer_of_cyclic(GroupSpec.sym(9), P("(1 2)", 9), method="scan")


@pytest.mark.parametrize("spec", [GroupSpec(f, n) for f in Family for n in range(3, 8)])
def test_normalizer_scan_matches_constructive(spec):
    for c in conjugacy_classes(spec):
        g = c.representative
        if g.is_identity():
            continue
        a = normalizer_of_cyclic(spec, g, method="scan")
        b = normalizer_of_cyclic(spec, g, method="constructive")
        assert (a.normalizer_order, a.centralizer_order, a.power_images) == \
               (b.normalizer_order, b.centralizer_order, b.power_images)
        assert a.normalizer_order % a.centralizer_order == 0
        assert a.normalizer_order // a.centralizer_order == len(a.power_images)
        m = element_order(g)
        assert a.ell * len(a.power_images) == euler_phi(m)
        if spec.family is Family.SYM:
            assert a.normalizer_order == sym_centralizer_order(cycle_shape(g)) * euler_phi(m)


@given(st.integers(min_value=2, max_value=12), st.data())
def test_power_conjugator(n, data):
    g = Permutation(tuple(data.draw(st.permutations(range(n)))))
    if g.is_identity():
        return
    m = element_order(g)
    i = data.draw(st.sampled_from([k for k in range(1, m + 1) if math.gcd(k, m) == 1]))
    assert conjugate(g, power_conjugator(g, i)) == power(g, i)


def test_block_system_examples():
    b = block_system([P("(1 2 3 4)", 4)], 4)
    assert b.kind == "imprimitive"
    assert sorted(sorted(x) for x in b.parts) == [[1, 3], [2, 4]]
    assert block_system(GroupSpec.sym(4).generators(), 4).kind == "primitive"
    assert block_system([P("(1 2 3)", 5)], 5).kind == "intransitive"


def test_block_system_prime_degree_cycle_is_primitive():
    assert block_system([P("(1 2 3 4 5 6 7)", 7)], 7).kind == "primitive"
    assert block_system([P("(1 2 3 4 5 6)", 6)], 6).kind == "imprimitive"
