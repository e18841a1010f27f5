"""Exact permutation arithmetic on {1..n}.

Internally a permutation is a tuple of 0-based images; all text and JSON
I/O is 1-based.  Products act on the right: ``compose(a, b)`` applies ``a``
first, then ``b``.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

MAX_DEGREE = 24


class PermutationError(ValueError):
    """Malformed permutation input (bad cycle string, degree mismatch, ...)."""


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) > MAX_DEGREE:
            raise PermutationError(f"degree {len(self.images)} exceeds MAX_DEGREE={MAX_DEGREE}")
        if sorted(self.images) != list(range(len(self.images))):
            raise PermutationError(f"not a permutation: {self.images!r}")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_images(cls, images: Sequence[int]) -> "Permutation":
        """Build from 1-based images, e.g. ``[2, 3, 1]`` is (1 2 3)."""
        return cls(tuple(i - 1 for i in images))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Permutation":
        img = list(range(n))
        seen: set[int] = set()
        for cyc in cycles:
            pts = [c - 1 for c in cyc]
            for p in pts:
                if not 0 <= p < n:
                    raise PermutationError(f"point {p + 1} outside 1..{n}")
                if p in seen:
                    raise PermutationError(f"point {p + 1} repeated")
                seen.add(p)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                img[a] = b
        return cls(tuple(img))

    @classmethod
    def parse(cls, text: str, n: int) -> "Permutation":
        return parse_cycles(text, n)

    def __call__(self, point: int) -> int:
        """Image of a 1-based point."""
        return self.images[point - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __pow__(self, k: int) -> "Permutation":
        return power(self, k)

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 1-based, each starting at its least point."""
        return [c for c in all_cycles(self) if len(c) > 1]

    def __str__(self) -> str:
        return format_cycles(self)

    def to_json(self) -> dict:
        return {"degree": self.degree, "images": [i + 1 for i in self.images]}

    @classmethod
    def from_json(cls, obj: dict) -> "Permutation":
        p = cls.from_images(obj["images"])
        if p.degree != obj["degree"]:
            raise PermutationError("degree does not match image count")
        return p


@dataclass(frozen=True)
class CycleShape:
    """Partition of n given by cycle lengths, fixed points included as 1s.

    ``parts`` is kept in non-increasing order so equal shapes compare equal.
    """

    parts: tuple[int, ...]

    def __post_init__(self):
        if any(p < 1 for p in self.parts):
            raise ValueError("cycle lengths must be positive")
        object.__setattr__(self, "parts", tuple(sorted(self.parts, reverse=True)))

    @property
    def degree(self) -> int:
        return sum(self.parts)

    @property
    def order(self) -> int:
        return math.lcm(*self.parts) if self.parts else 1

    @property
    def parity(self) -> int:
        return sum(p - 1 for p in self.parts) % 2

    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self.parts))

    def nontrivial(self) -> tuple[int, ...]:
        return tuple(p for p in self.parts if p > 1)

    def representative(self) -> Permutation:
        """The permutation with consecutive cycles (1..l1)(l1+1..l1+l2)..."""
        cycles, start = [], 1
        for p in self.parts:
            cycles.append(range(start, start + p))
            start += p
        return Permutation.from_cycles(cycles, self.degree)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.parts)) + "}"

    def label(self) -> str:
        """Compact exponent form, e.g. ``7.1`` or ``2^2.1^3``."""
        out = []
        for length, mult in sorted(self.multiplicities().items(), reverse=True):
            out.append(f"{length}^{mult}" if mult > 1 else str(length))
        return ".".join(out)


def check_degree(*perms: Permutation) -> int:
    degrees = {p.degree for p in perms}
    if len(degrees) != 1:
        raise PermutationError(f"degree mismatch: {sorted(degrees)}")
    return degrees.pop()


def compose(*perms: Permutation) -> Permutation:
    """Product applying the arguments left to right."""
    if not perms:
        raise PermutationError("compose needs at least one permutation")
    check_degree(*perms)
    img = perms[0].images
    for p in perms[1:]:
        img = tuple(map(p.images.__getitem__, img))
    return Permutation(img)


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for i, v in enumerate(p.images):
        inv[v] = i
    return Permutation(tuple(inv))


def power(p: Permutation, k: int) -> Permutation:
    if k < 0:
        return power(inverse(p), -k)
    result = tuple(range(p.degree))
    base = p.images
    while k:
        if k & 1:
            result = tuple(map(base.__getitem__, result))
        base = tuple(map(base.__getitem__, base))
        k >>= 1
    return Permutation(result)


def conjugate(p: Permutation, s: Permutation) -> Permutation:
    """``s^-1 p s``: relabels each point i of p's cycles as s(i)."""
    return compose(inverse(s), p, s)


def all_cycles(p: Permutation) -> list[tuple[int, ...]]:
    seen = [False] * p.degree
    out = []
    for i in range(p.degree):
        if seen[i]:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j + 1)
            j = p.images[j]
        out.append(tuple(cyc))
    return out


def cycle_shape(p: Permutation) -> CycleShape:
    return CycleShape(tuple(len(c) for c in all_cycles(p)))


def element_order(p: Permutation) -> int:
    return cycle_shape(p).order


def parity(p: Permutation) -> int:
    """0 for even permutations, 1 for odd."""
    return cycle_shape(p).parity


def sym_centralizer_order(shape: CycleShape) -> int:
    """|C_{Sym_n}(g)| = prod over lengths l of l^m * m!."""
    return reduce(
        lambda acc, lm: acc * lm[0] ** lm[1] * math.factorial(lm[1]),
        shape.multiplicities().items(),
        1,
    )


def sym_class_size(shape: CycleShape) -> int:
    return math.factorial(shape.degree) // sym_centralizer_order(shape)


def partitions(n: int, max_part: int | None = None) -> Iterable[tuple[int, ...]]:
    """Partitions of n in non-increasing order, reverse-lexicographic."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def format_cycles(p: Permutation) -> str:
    cyc = p.cycles()
    if not cyc:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse cycle notation such as ``"(1 2 3)(4 5)"``; ``"()"`` is the identity.

    Commas are accepted as separators in addition to whitespace.
    """
    if n < 1 or n > MAX_DEGREE:
        raise PermutationError(f"degree {n} outside 1..{MAX_DEGREE}")
    s = text.strip()
    if not s:
        raise PermutationError("empty permutation string")
    pos, cycles = 0, []
    for m in _CYCLE_RE.finditer(s):
        if s[pos:m.start()].strip():
            raise PermutationError(f"unexpected text {s[pos:m.start()]!r} in {text!r}")
        body = m.group(1).replace(",", " ").split()
        try:
            cycles.append([int(tok) for tok in body])
        except ValueError:
            raise PermutationError(f"non-integer point in {text!r}") from None
        pos = m.end()
    if s[pos:].strip() or not cycles:
        raise PermutationError(f"cannot parse {text!r}")
    return Permutation.from_cycles([c for c in cycles if c], n)
