"""Deterministic Schreier-Sims on raw 0-based image tuples.

Base points are always the least point moved by the element that forces a
base extension, so chains built from the same generator list are identical.
"""

from __future__ import annotations

from math import prod
from typing import Iterable, Sequence

Perm = tuple[int, ...]


def _mul(a: Perm, b: Perm) -> Perm:
    return tuple(map(b.__getitem__, a))


def _inv(a: Perm) -> Perm:
    inv = [0] * len(a)
    for i, v in enumerate(a):
        inv[v] = i
    return tuple(inv)


class _Level:
    __slots__ = ("base", "gens", "u", "uinv")

    def __init__(self, base: int, ident: Perm):
        self.base = base
        self.gens: list[Perm] = []
        # u[pt] maps base -> pt; uinv[pt] maps pt -> base
        self.u: dict[int, Perm] = {base: ident}
        self.uinv: dict[int, Perm] = {base: ident}

    def add_gen(self, g: Perm) -> None:
        self.gens.append(g)
        u, uinv, gens = self.u, self.uinv, self.gens
        queue = list(u)
        k = 0
        while k < len(queue):
            p = queue[k]
            k += 1
            up = u[p]
            for s in gens:
                q = s[p]
                if q not in u:
                    w = _mul(up, s)
                    u[q] = w
                    uinv[q] = _inv(w)
                    queue.append(q)


class StabChain:
    """Base and strong generating set for ``<gens>`` acting on range(n).

    If ``target`` is given, construction stops as soon as the partial chain
    already certifies ``|<gens>| >= target``; the chain is then only valid as
    a lower bound witness and :attr:`complete` is False.
    """

    def __init__(self, gens: Iterable[Sequence[int]], n: int, target: int | None = None):
        self.n = n
        self.ident: Perm = tuple(range(n))
        self.levels: list[_Level] = []
        self.complete = True
        gens = [tuple(g) for g in gens]
        for g in gens:
            if len(g) != n:
                raise ValueError("generator degree mismatch")
        for g in gens:
            if g != self.ident:
                self._insert(g, 0)
        self._schreier_sims(target)

    def _insert(self, h: Perm, start: int) -> int | None:
        """Sift h from level ``start``; store any residue. Returns the level changed."""
        levels = self.levels
        for j in range(start, len(levels)):
            lv = levels[j]
            pt = h[lv.base]
            w = lv.uinv.get(pt)
            if w is None:
                for lvl in levels[start:j + 1]:
                    lvl.add_gen(h)
                return j
            h = _mul(h, w)
        if h == self.ident:
            return None
        b = next(i for i, v in enumerate(h) if i != v)
        levels.append(_Level(b, self.ident))
        for lvl in levels[start:]:
            lvl.add_gen(h)
        return len(levels) - 1

    def _schreier_sims(self, target: int | None) -> None:
        if target is not None and self.order() >= target:
            self.complete = False
            return
        i = len(self.levels) - 1
        while i >= 0:
            lv = self.levels[i]
            changed = None
            for pt, up in list(lv.u.items()):
                for s in list(lv.gens):
                    us = _mul(up, s)
                    q = s[pt]
                    if us == lv.u[q]:
                        continue
                    changed = self._insert(_mul(us, lv.uinv[q]), i + 1)
                    if changed is not None:
                        break
                if changed is not None:
                    break
            if changed is None:
                i -= 1
                continue
            if target is not None and self.order() >= target:
                self.complete = False
                return
            i = changed

    @property
    def base(self) -> list[int]:
        return [lv.base for lv in self.levels]

    def orbit_sizes(self) -> list[int]:
        return [len(lv.u) for lv in self.levels]

    def order(self) -> int:
        return prod(len(lv.u) for lv in self.levels)

    def strong_generators(self) -> list[Perm]:
        return list(self.levels[0].gens) if self.levels else []

    def sift(self, g: Sequence[int]) -> tuple[Perm, int]:
        h = tuple(g)
        for j, lv in enumerate(self.levels):
            w = lv.uinv.get(h[lv.base])
            if w is None:
                return h, j
            h = _mul(h, w)
        return h, len(self.levels)

    def contains(self, g: Sequence[int]) -> bool:
        if not self.complete:
            raise RuntimeError("membership needs a complete chain")
        h, j = self.sift(g)
        return j == len(self.levels) and h == self.ident


def group_order(gens: Iterable[Sequence[int]], n: int) -> int:
    return StabChain(gens, n).order()


def orbit(gens: Sequence[Sequence[int]], point: int) -> list[int]:
    seen = {point}
    queue = [point]
    for p in queue:
        for s in gens:
            q = s[p]
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return queue
