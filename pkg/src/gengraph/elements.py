"""Dense numpy tables of all elements of Alt_n / Sym_n.

Rows are 0-based image arrays in lexicographic order; the Lehmer rank of a
row is its index in Sym_n, and Alt_n uses a rank -> index lookup.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import permutations

import numpy as np

from .groups import Family, GroupSpec


def lehmer_rank(perms: np.ndarray) -> np.ndarray:
    """Lexicographic rank of each row among all permutations of its length."""
    perms = np.asarray(perms)
    m, n = perms.shape
    rank = np.zeros(m, dtype=np.int64)
    for i in range(n - 1):
        smaller = (perms[:, i + 1:] < perms[:, i:i + 1]).sum(axis=1)
        rank += smaller * math.factorial(n - 1 - i)
    return rank


def parities(perms: np.ndarray) -> np.ndarray:
    """0/1 parity per row via inversion counts."""
    n = perms.shape[1]
    inv = np.zeros(perms.shape[0], dtype=np.int64)
    for i in range(n - 1):
        inv += (perms[:, i + 1:] < perms[:, i:i + 1]).sum(axis=1)
    return (inv & 1).astype(np.int8)


def compose_rows(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise product, a first: out[k, i] = b[k, a[k, i]] (b may be 1-D)."""
    if b.ndim == 1:
        return b[a]
    return np.take_along_axis(b, a.astype(np.intp), axis=1)


def invert_rows(a: np.ndarray) -> np.ndarray:
    out = np.empty_like(a)
    rows = np.arange(a.shape[0])[:, None]
    out[rows, a] = np.arange(a.shape[1], dtype=a.dtype)
    return out


class ElementTable:
    """All elements of a group spec with O(1)-ish vectorized indexing."""

    def __init__(self, spec: GroupSpec):
        self.spec = spec
        n = spec.n
        allp = np.array(list(permutations(range(n))), dtype=np.int8)
        if spec.family is Family.ALT:
            keep = parities(allp) == 0
            self.perms = allp[keep]
            lookup = np.full(len(allp), -1, dtype=np.int64)
            lookup[keep] = np.arange(int(keep.sum()))
            self._lookup = lookup
        else:
            self.perms = allp
            self._lookup = None
        self.perms.setflags(write=False)
        self.identity_index = 0

    def __len__(self) -> int:
        return len(self.perms)

    def index(self, rows: np.ndarray) -> np.ndarray:
        rows = np.atleast_2d(rows)
        r = lehmer_rank(rows)
        if self._lookup is None:
            return r
        idx = self._lookup[r]
        if (idx < 0).any():
            raise ValueError("odd permutation looked up in Alt table")
        return idx

    def index_of(self, p) -> int:
        return int(self.index(np.asarray(p, dtype=np.int8)[None, :])[0])

    def conjugation_map(self, s) -> np.ndarray:
        """Index permutation x -> s^-1 x s."""
        s = np.asarray(s, dtype=np.int8)
        sinv = np.argsort(s).astype(np.int8)
        # (s^-1 x s)(i) = s[x[sinv[i]]]
        conj = s[self.perms[:, sinv]]
        return self.index(conj)

    def power_map(self, k: int) -> np.ndarray:
        """Index permutation x -> x^k (k coprime to the exponent)."""
        return self.index(self.powers(k))

    def powers(self, k: int) -> np.ndarray:
        n = self.spec.n
        result = np.broadcast_to(np.arange(n, dtype=np.int8), self.perms.shape).copy()
        base = self.perms.copy()
        while k:
            if k & 1:
                result = compose_rows(result, base)
            base = compose_rows(base, base)
            k >>= 1
        return result

    def orders(self) -> np.ndarray:
        """Element orders as lcm of the cycle length through each point."""
        n = self.spec.n
        ident = np.arange(n, dtype=np.int8)
        cyclen = np.zeros(self.perms.shape, dtype=np.int64)
        cur = self.perms.copy()
        for k in range(1, n + 1):
            cyclen[(cur == ident) & (cyclen == 0)] = k
            cur = compose_rows(cur, self.perms)
        return np.lcm.reduce(cyclen, axis=1)


def orbit_labels(maps: list[np.ndarray], size: int) -> np.ndarray:
    """Orbit of each index under the group generated by index permutations.

    Each orbit is labelled by its least member.
    """
    labels = np.arange(size, dtype=np.int64)
    maps = list(maps) + [np.argsort(m) for m in maps]
    while True:
        new = labels
        for m in maps:
            new = np.minimum(new, new[m])
        new = new[new]
        if np.array_equal(new, labels):
            return labels
        labels = new


@lru_cache(maxsize=8)
def element_table(spec: GroupSpec) -> ElementTable:
    return ElementTable(spec)
