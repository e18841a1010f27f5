"""Totients, primes congruent to 3 mod 4, power-sum decompositions of n,
the Eulerian predicate for Alt_n / Sym_n and the odd-degree probability."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .config import InputError
from .perm import CycleShape


def factorize(m: int) -> dict[int, int]:
    """Trial division; fine for the element orders that occur here."""
    if m < 1:
        raise InputError(f"cannot factor {m}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def euler_phi(m: int) -> int:
    if m < 1:
        raise InputError(f"phi undefined for {m}")
    result = m
    for p in factorize(m):
        result = result // p * (p - 1)
    return result


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    return factorize(q) == {q: 1}


def is_prime_3mod4(q: int) -> bool:
    if q < 2:
        raise InputError(f"q must be >= 2, got {q}")
    return q % 4 == 3 and is_prime(q)


def units(m: int) -> list[int]:
    return [i for i in range(m) if math.gcd(i, m) == 1] if m > 1 else [0]


def squarefree_part(m: int) -> int:
    """Product of the distinct primes dividing m."""
    return math.prod(factorize(m)) if m > 1 else 1


@dataclass(frozen=True)
class DecompositionCertificate:
    """Witness n = sum_i a_i p^i with a_i in {0,1}, a_k = 1, p prime = 3 mod 4."""

    n: int
    p: int
    k: int
    coefficients: tuple[int, ...]   # a_0..a_k
    alt_condition: bool
    shape: CycleShape = field(compare=False)

    def __post_init__(self):
        if sum(a * self.p ** i for i, a in enumerate(self.coefficients)) != self.n:
            raise ValueError("coefficients do not sum to n")
        if self.coefficients[-1] != 1 or any(a not in (0, 1) for a in self.coefficients):
            raise ValueError("coefficients must be 0/1 with leading 1")

    def render(self) -> str:
        terms = []
        for i in range(self.k, -1, -1):
            if self.coefficients[i]:
                terms.append("1" if i == 0 else f"{self.p}^{i}")
        return f"{self.n} = " + " + ".join(terms)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "k": self.k,
            "coefficients": list(self.coefficients),
            "alt_condition": self.alt_condition,
            "shape": list(self.shape.parts),
            "sum": self.render(),
        }


def decompositions(n: int, family) -> list[DecompositionCertificate]:
    """All decompositions n = sum a_i p^i over primes p = 3 mod 4, p <= n.

    For Alt_n only certificates where an odd number of odd-indexed a_i are
    nonzero are kept.  Sym_3 is excluded: there |N(<g>)| is odd only for the
    3-cycles, which is handled as a special case by callers.
    """
    from .groups import Family

    family = Family(family)
    if n < 3:
        raise InputError("n must be >= 3")
    if family is Family.SYM and n == 3:
        return []
    certs = []
    for p in range(3, n + 1):
        if not is_prime_3mod4(p):
            continue
        k = 1
        while p ** k <= n:
            for lower in product((0, 1), repeat=k):
                coeffs = lower + (1,)
                if sum(a * p ** i for i, a in enumerate(coeffs)) != n:
                    continue
                odd_terms = sum(coeffs[i] for i in range(1, k + 1, 2))
                alt_ok = odd_terms % 2 == 1
                if family is Family.ALT and not alt_ok:
                    continue
                shape = CycleShape(tuple(p ** i for i, a in enumerate(coeffs) if a))
                certs.append(DecompositionCertificate(n, p, k, coeffs, alt_ok, shape))
            k += 1
    return certs


def eulerian_predicate(n: int) -> bool:
    """Gamma(Alt_n) and Gamma(Sym_n) are Eulerian iff neither n nor n-1 is a prime = 3 mod 4."""
    if n < 3:
        raise InputError("n must be >= 3")
    return not is_prime_3mod4(n) and not is_prime_3mod4(n - 1)


def odd_prime_for(n: int) -> int | None:
    """The prime p = 3 mod 4 in {n, n-1}, if any; two consecutive integers cannot both qualify."""
    for p in (n, n - 1):
        if p >= 2 and is_prime_3mod4(p):
            return p
    return None


def out_order(spec) -> int:
    from .groups import Family

    if spec.n == 6:
        return 4 if spec.family is Family.ALT else 2
    if spec.family is Family.SYM:
        return 1
    return 2 if spec.n >= 3 else 1


@dataclass(frozen=True)
class ProbabilityReport:
    spec: object
    p: int
    out_order: int
    numerator: int
    denominator: int
    odd_vertex_count: int | None = None

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def to_json(self) -> dict:
        return {
            "group": self.spec.name,
            "p": self.p,
            "out_order": self.out_order,
            "probability": f"{self.numerator}/{self.denominator}",
            "numerator": self.numerator,
            "denominator": self.denominator,
            "odd_vertex_count": self.odd_vertex_count,
        }


def probability_formula(n: int, p: int, out: int) -> Fraction:
    """|Out(G)| / (p (1 - |Out(G)|/n!)) as an exact rational."""
    return Fraction(out) / (p * (1 - Fraction(out, math.factorial(n))))


def odd_degree_probability(spec, odd_vertex_count: int | None = None) -> ProbabilityReport:
    """Exact probability that a uniformly random vertex of Gamma(G) has odd degree.

    Requires Gamma(G) to be non-Eulerian.  If ``odd_vertex_count`` is given it
    must agree with the closed form.
    """
    if spec.n == 6:
        raise InputError("n = 6 unsupported (Out(G) is exceptional; Gamma is Eulerian anyway)")
    if eulerian_predicate(spec.n):
        raise InputError(f"Gamma({spec.name}) is Eulerian; the probability is 0")
    p = odd_prime_for(spec.n)
    out = out_order(spec)
    value = probability_formula(spec.n, p, out)
    if odd_vertex_count is not None:
        direct = Fraction(odd_vertex_count, spec.order - 1)
        if direct != value:
            raise AssertionError(f"count {direct} disagrees with formula {value}")
    return ProbabilityReport(spec, p, out, value.numerator, value.denominator, odd_vertex_count)
