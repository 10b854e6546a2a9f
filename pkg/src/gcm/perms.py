"""Permutations of the vertex set and exact permutation-group orders.

Composition is left to right: ``p * q`` applies ``p`` first, so
``(p * q).image[v] == q.image[p.image[v]]``.  This matches the exponent
notation ``x^{pq} = (x^p)^q`` used for graph automorphisms.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


class VertexPermutation:
    __slots__ = ("image", "label")

    def __init__(self, image: Sequence[int] | np.ndarray, label: str = ""):
        arr = np.asarray(image, dtype=np.int64)
        if arr.ndim != 1 or not np.array_equal(np.sort(arr), np.arange(arr.size)):
            raise ValueError("image is not a permutation")
        arr = arr.copy()
        arr.setflags(write=False)
        self.image = arr
        self.label = label

    @classmethod
    def identity(cls, n: int, label: str = "id") -> "VertexPermutation":
        return cls(np.arange(n), label)

    @classmethod
    def _trusted(cls, arr: np.ndarray, label: str = "") -> "VertexPermutation":
        p = cls.__new__(cls)
        arr.setflags(write=False)
        p.image = arr
        p.label = label
        return p

    @property
    def degree(self) -> int:
        return self.image.size

    def __call__(self, v: int) -> int:
        return int(self.image[v])

    def __mul__(self, other: "VertexPermutation") -> "VertexPermutation":
        return VertexPermutation._trusted(other.image[self.image], _join(self.label, other.label))

    def __pow__(self, k: int) -> "VertexPermutation":
        base = self if k >= 0 else self.inverse()
        out = VertexPermutation.identity(self.degree)
        for _ in range(abs(k)):
            out = out * base
        return out

    def inverse(self) -> "VertexPermutation":
        inv = np.empty_like(self.image)
        inv[self.image] = np.arange(self.degree)
        return VertexPermutation._trusted(inv, f"{self.label}^-1" if self.label else "")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, VertexPermutation) and np.array_equal(self.image, other.image)

    def __hash__(self) -> int:
        return hash(self.image.tobytes())

    def __repr__(self) -> str:
        name = self.label or "perm"
        return f"VertexPermutation({name}, degree={self.degree})"

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.image, np.arange(self.degree)))

    def fixed_points(self) -> list[int]:
        return np.flatnonzero(self.image == np.arange(self.degree)).tolist()

    def order(self) -> int:
        seen = np.zeros(self.degree, dtype=bool)
        out = 1
        for start in range(self.degree):
            if seen[start]:
                continue
            length, v = 0, start
            while not seen[v]:
                seen[v] = True
                v = int(self.image[v])
                length += 1
            out = math.lcm(out, length)
        return out

    def to_json(self) -> str:
        return json.dumps({"label": self.label, "image": self.image.tolist()})


def _join(a: str, b: str) -> str:
    if a and b:
        return f"{a}*{b}"
    return a or b


def compose(*perms: VertexPermutation) -> VertexPermutation:
    out = perms[0]
    for p in perms[1:]:
        out = out * p
    return out


# --- Schreier-Sims ---------------------------------------------------------------


@dataclass
class _Level:
    base_point: int
    gens: list[np.ndarray] = field(default_factory=list)
    inv_gens: list[np.ndarray] = field(default_factory=list)
    label: np.ndarray | None = None  # generator index reaching each orbit point, -1 outside, -2 at the root
    orbit: list[int] = field(default_factory=list)
    checked: set = field(default_factory=set)
    _transversal: dict = field(default_factory=dict)


class PermGroup:
    """A permutation group with a lazily built base and strong generating set."""

    def __init__(self, generators: Iterable[VertexPermutation], degree: int | None = None):
        gens = list(generators)
        if degree is None:
            if not gens:
                raise ValueError("degree is required for an empty generator list")
            degree = gens[0].degree
        self.degree = degree
        self.generators = gens
        self._levels: list[_Level] | None = None

    # public API
    def order(self) -> int:
        levels = self._bsgs()
        return math.prod(len(lv.orbit) for lv in levels)

    @property
    def base(self) -> list[int]:
        return [lv.base_point for lv in self._bsgs()]

    @property
    def orbit_lengths(self) -> list[int]:
        return [len(lv.orbit) for lv in self._bsgs()]

    def contains(self, p: VertexPermutation) -> bool:
        levels = self._bsgs()
        h, j = self._sift(levels, p.image.copy(), 0)
        return j == len(levels) and bool(np.array_equal(h, self._id))

    def orbit(self, point: int) -> list[int]:
        seen = {point}
        frontier = [point]
        while frontier:
            nxt = []
            for v in frontier:
                for g in self.generators:
                    w = int(g.image[v])
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        return sorted(seen)

    # internals
    @property
    def _id(self) -> np.ndarray:
        return np.arange(self.degree, dtype=np.int64)

    def _bsgs(self) -> list[_Level]:
        if self._levels is None:
            self._levels = self._schreier_sims()
        return self._levels

    def _new_level(self, point: int) -> _Level:
        lv = _Level(point)
        lv.label = np.full(self.degree, -1, dtype=np.int64)
        lv.label[point] = -2
        lv.orbit = [point]
        return lv

    def _add_gen(self, lv: _Level, g: np.ndarray) -> None:
        lv.gens.append(g)
        inv = np.empty_like(g)
        inv[g] = self._id
        lv.inv_gens.append(inv)
        # extend the orbit without touching existing tree edges
        idx = 0
        while idx < len(lv.orbit):
            v = lv.orbit[idx]
            for gi, s in enumerate(lv.gens):
                w = int(s[v])
                if lv.label[w] == -1:
                    lv.label[w] = gi
                    lv.orbit.append(w)
            idx += 1

    def _transversal(self, lv: _Level, beta: int) -> np.ndarray:
        """u_beta with base_point^u = beta."""
        cached = lv._transversal.get(beta)
        if cached is not None:
            return cached
        path = []
        v = beta
        while lv.label[v] != -2:
            gi = int(lv.label[v])
            path.append(gi)
            v = int(lv.inv_gens[gi][v])
        u = self._id
        for gi in reversed(path):
            u = lv.gens[gi][u]
        lv._transversal[beta] = u
        return u

    def _strip(self, lv: _Level, h: np.ndarray) -> np.ndarray:
        """h * u_beta^-1 where beta = base_point^h."""
        beta = int(h[lv.base_point])
        while lv.label[beta] != -2:
            gi = int(lv.label[beta])
            h = lv.inv_gens[gi][h]
            beta = int(lv.inv_gens[gi][beta])
        return h

    def _sift(self, levels: list[_Level], h: np.ndarray, start: int) -> tuple[np.ndarray, int]:
        for j in range(start, len(levels)):
            lv = levels[j]
            if lv.label[int(h[lv.base_point])] == -1:
                return h, j
            h = self._strip(lv, h)
        return h, len(levels)

    def _schreier_sims(self) -> list[_Level]:
        ident = self._id
        gens = [g.image.copy() for g in self.generators if not g.is_identity()]
        levels: list[_Level] = []

        def moved_point(g: np.ndarray) -> int:
            return int(np.flatnonzero(g != ident)[0])

        for g in gens:
            if all(int(g[lv.base_point]) == lv.base_point for lv in levels):
                levels.append(self._new_level(0 if g[0] != 0 else moved_point(g)))
        for g in gens:
            for lv in levels:
                self._add_gen(lv, g)
                if int(g[lv.base_point]) != lv.base_point:
                    break

        i = len(levels) - 1
        while i >= 0:
            lv = levels[i]
            restart = False
            for beta in list(lv.orbit):
                for si in range(len(lv.gens)):
                    key = (beta, si)
                    if key in lv.checked:
                        continue
                    s = lv.gens[si]
                    u_beta = self._transversal(lv, beta)
                    us = s[u_beta]
                    gamma = int(s[beta])
                    u_gamma = self._transversal(lv, gamma)
                    lv.checked.add(key)
                    if np.array_equal(us, u_gamma):
                        continue
                    inv_u = np.empty_like(u_gamma)
                    inv_u[u_gamma] = ident
                    h = inv_u[us]
                    res, j = self._sift(levels, h, i + 1)
                    if j < len(levels) or not np.array_equal(res, ident):
                        if j == len(levels):
                            levels.append(self._new_level(moved_point(res)))
                        for l in range(i + 1, j + 1):
                            self._add_gen(levels[l], res)
                        i = j
                        restart = True
                        break
                if restart:
                    break
            if not restart:
                i -= 1
        return levels


def group_order(generators: Sequence[VertexPermutation], degree: int | None = None) -> int:
    return PermGroup(generators, degree).order()
