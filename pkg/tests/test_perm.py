import math
from collections import Counter
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gengraph.perm import (
    CycleShape,
    Permutation,
    PermutationError,
    compose,
    conjugate,
    cycle_shape,
    element_order,
    inverse,
    parity,
    partitions,
    power,
    sym_centralizer_order,
    sym_class_size,
)

from conftest import perm_pairs, perms

P = Permutation.parse


def test_compose_inverse_pair_is_identity():
    assert compose(P("(1 2 3)", 3), P("(1 3 2)", 3)).is_identity()


def test_compose_identity_law():
    p = P("(1 4)(2 3)", 4)
    assert compose(Permutation.identity(4), p) == p


def test_compose_applies_left_factor_first():
    # 1 -> 2 -> 3, 2 -> 1, 3 -> 2
    assert compose(P("(1 2)", 3), P("(2 3)", 3)) == P("(1 3 2)", 3)
    assert P("(1 2)", 3) * P("(2 3)", 3) == P("(1 3 2)", 3)


def test_compose_degree_mismatch():
    with pytest.raises(PermutationError):
        compose(P("(1 2)", 2), P("(1 2)", 3))


@pytest.mark.parametrize("text, n, parts", [
    ("(1 2 3)(4 5)", 5, (3, 2)),
    ("()", 4, (1, 1, 1, 1)),
    ("(1 2 3 4 5 6 7)", 8, (7, 1)),
])
def test_cycle_shape_examples(text, n, parts):
    assert cycle_shape(P(text, n)).parts == parts


def test_element_order_examples():
    assert element_order(P("(1 2 3)(4 5)", 5)) == 6
    assert element_order(Permutation.identity(5)) == 1
    g = Permutation.from_cycles([range(1, 10), range(10, 13)], 12)
    assert cycle_shape(g).parts == (9, 3)
    assert element_order(g) == 9
    # repeated composition oracle
    k, x = 1, g
    while not x.is_identity():
        x, k = x * g, k + 1
    assert k == 9


def test_sym_centralizer_order_examples():
    assert sym_centralizer_order(CycleShape((7,))) == 7
    assert sym_centralizer_order(CycleShape((9, 3))) == 27
    assert sym_centralizer_order(CycleShape((1,) * 5)) == math.factorial(5)


def test_sym_centralizer_small_analog_by_brute_force():
    g = P("(1 2 3)", 4)
    count = sum(1 for im in permutations(range(4))
                if conjugate(g, Permutation(im)) == g)
    assert count == sym_centralizer_order(cycle_shape(g)) == 3


@pytest.mark.parametrize("n", range(1, 8))
def test_orbit_stabilizer_by_counting(n):
    counts = Counter(cycle_shape(Permutation(im)) for im in permutations(range(n)))
    assert set(counts) == {CycleShape(p) for p in partitions(n)}
    for shape, size in counts.items():
        assert size == sym_class_size(shape)
        assert size * sym_centralizer_order(shape) == math.factorial(n)


def test_text_format_is_bit_exact():
    assert str(P("(4 5)(1 2 3)", 5)) == "(1 2 3)(4 5)"
    assert str(Permutation.identity(3)) == "()"
    assert str(P("(2 3 1)", 3)) == "(1 2 3)"


@pytest.mark.parametrize("bad", ["(1 2", "(1 1)", "(0 1)", "(1 9)", "1 2", "(a b)"])
def test_parse_rejects_malformed(bad):
    with pytest.raises(PermutationError):
        P(bad, 5)


def test_json_round_trip():
    p = P("(1 3)(2 5 4)", 6)
    d = p.to_json()
    assert d == {"degree": 6, "images": [3, 5, 1, 2, 4, 6]}
    assert Permutation.from_json(d) == p


def test_degree_cap():
    with pytest.raises(PermutationError):
        Permutation.identity(25)


@given(perms(max_n=9))
def test_text_round_trip(p):
    assert P(str(p), p.degree) == p


@given(perm_pairs(max_n=9))
def test_conjugation_preserves_shape(pair):
    p, s = pair
    assert cycle_shape(compose(inverse(s), p, s)) == cycle_shape(p)


@given(perm_pairs(max_n=9))
def test_parity_is_a_homomorphism(pair):
    a, b = pair
    assert parity(a * b) == parity(a) ^ parity(b)


@given(perm_pairs(max_n=8, count=3))
def test_associativity(triple):
    a, b, c = triple
    assert (a * b) * c == a * (b * c)


@given(perms(max_n=9))
def test_inverse_law_and_order_divides_group_order(p):
    assert (p * ~p).is_identity()
    m = element_order(p)
    assert math.factorial(p.degree) % m == 0
    assert power(p, m).is_identity()
    shape = cycle_shape(p)
    assert shape.order == m
    assert shape.parity == parity(p)


@given(st.integers(min_value=1, max_value=12))
def test_partitions_count_and_shape(n):
    parts = list(partitions(n))
    assert len(parts) == len(set(parts))
    assert all(sum(q) == n and list(q) == sorted(q, reverse=True) for q in parts)
