import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gengraph.config import InputError
from gengraph.groups import Family, GroupSpec
from gengraph.numtheory import (
    decompositions,
    euler_phi,
    eulerian_predicate,
    is_prime_3mod4,
    odd_degree_probability,
    probability_formula,
    squarefree_part,
)
from gengraph.perm import element_order, Permutation


def test_euler_phi_examples():
    assert (euler_phi(1), euler_phi(9), euler_phi(7)) == (1, 6, 6)
    with pytest.raises(InputError):
        euler_phi(0)


@given(st.integers(min_value=1, max_value=2000))
def test_euler_phi_counts_units(m):
    assert euler_phi(m) == sum(1 for k in range(1, m + 1) if math.gcd(k, m) == 1)


@given(st.integers(min_value=1, max_value=300), st.integers(min_value=1, max_value=300))
def test_euler_phi_multiplicative(a, b):
    if math.gcd(a, b) == 1:
        assert euler_phi(a * b) == euler_phi(a) * euler_phi(b)


def test_is_prime_3mod4_examples():
    assert is_prime_3mod4(7) and not is_prime_3mod4(5) and not is_prime_3mod4(9)
    assert [q for q in range(2, 50) if is_prime_3mod4(q)] == [3, 7, 11, 19, 23, 31, 43, 47]
    with pytest.raises(InputError):
        is_prime_3mod4(1)


def test_squarefree_part():
    assert [squarefree_part(m) for m in (1, 2, 8, 12, 360)] == [1, 2, 2, 6, 30]


def test_decomposition_n12_alt():
    certs = decompositions(12, Family.ALT)
    three = [c for c in certs if c.p == 3]
    assert len(three) == 1
    c = three[0]
    assert (c.k, c.coefficients, c.shape.parts, c.alt_condition) == (2, (0, 1, 1), (9, 3), True)
    assert c.render() == "12 = 3^2 + 3^1"
    # 12 = 11 + 1 also qualifies: an 11-cycle in Alt_12 has normalizer of odd order 55
    assert {c.p for c in certs} == {3, 11}


def test_decomposition_examples():
    assert decompositions(6, Family.ALT) == decompositions(6, Family.SYM) == []
    (c,) = decompositions(8, Family.SYM)
    assert (c.p, c.k, c.shape.parts, c.render()) == (7, 1, (7, 1), "8 = 7^1 + 1")
    assert decompositions(3, Family.SYM) == []


@given(st.integers(min_value=3, max_value=24), st.sampled_from(list(Family)))
def test_certificate_invariants(n, family):
    for c in decompositions(n, family):
        assert sum(a * c.p ** i for i, a in enumerate(c.coefficients)) == n
        assert sum(c.shape.parts) == n
        assert len(set(c.shape.parts)) == len(c.shape.parts)
        g = c.shape.representative()
        assert element_order(g) == c.p ** c.k
        if family is Family.ALT:
            assert c.alt_condition


def test_eulerian_predicate_examples():
    assert not eulerian_predicate(7)
    assert eulerian_predicate(5) and eulerian_predicate(9)
    assert [n for n in range(3, 25) if not eulerian_predicate(n)] == [3, 4, 7, 8, 11, 12, 19, 20, 23, 24]


@pytest.mark.parametrize("spec, want", [
    (GroupSpec.sym(7), Fraction(720, 5039)),
    (GroupSpec.alt(7), Fraction(720, 2519)),
    (GroupSpec.alt(8), Fraction(5760, 20159)),
])
def test_probability_examples(spec, want):
    rep = odd_degree_probability(spec)
    assert rep.value == want
    assert (rep.numerator, rep.denominator) == (want.numerator, want.denominator)


def test_probability_cross_check_and_errors():
    odd = 720
    assert odd_degree_probability(GroupSpec.sym(7), odd).odd_vertex_count == odd
    with pytest.raises(AssertionError):
        odd_degree_probability(GroupSpec.sym(7), odd + 1)
    with pytest.raises(InputError):
        odd_degree_probability(GroupSpec.sym(5))
    with pytest.raises(InputError):
        odd_degree_probability(GroupSpec.alt(6))


@pytest.mark.parametrize("family", list(Family))
def test_probability_decreases_along_primes(family):
    values = [odd_degree_probability(GroupSpec(family, p)).value for p in (7, 11, 19, 23)]
    assert values == sorted(values, reverse=True)


def test_probability_formula_is_exact():
    assert probability_formula(7, 7, 1) == Fraction(1) / (7 * (1 - Fraction(1, 5040)))
