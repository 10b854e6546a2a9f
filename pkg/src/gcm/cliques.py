"""Maximum cliques through the identity and their interval/dispersed types.

Right transfers act transitively, so every maximum clique is a translate of
one containing e, and such a clique lives in {e} ∪ V(e).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import config
from .errors import NotAClique, TooLarge
from .graph import GcmGraph, InducedGraph, IntervalElement, induced


@dataclass(frozen=True)
class CliqueType:
    kind: str  # Interval, Dispersed, DispersedOther or MixedInvalid
    params: tuple = ()

    def __str__(self) -> str:
        if self.kind == "Interval":
            return f"Interval[{self.params[0]},{self.params[1]})"
        if self.kind == "Dispersed":
            return f"Dispersed(x={self.params[0]}, j={self.params[1]})"
        return self.kind


@dataclass(frozen=True)
class CliqueRecord:
    vertices: tuple[int, ...]
    type: CliqueType

    @property
    def contains_e(self) -> bool:
        return 0 in self.vertices

    @property
    def star(self) -> tuple[int, ...]:
        """Q*, the clique without the identity."""
        return tuple(v for v in self.vertices if v != 0)

    def __len__(self) -> int:
        return len(self.vertices)

    def to_dict(self, graph: GcmGraph, neighbor_hist: dict[int, int] | None = None) -> dict:
        out = {
            "size": len(self.vertices),
            "type": str(self.type),
            "vertices": [graph.vertex_name(v) for v in self.vertices],
        }
        if neighbor_hist is not None:
            out["neighbor_degree_histogram"] = {str(k): v for k, v in neighbor_hist.items()}
        return out


def _star_bitsets(graph: GcmGraph) -> tuple[list[int], list[int]]:
    """V(e) and its internal adjacency as bit sets over local indices."""
    star = sorted(graph.gen_set)
    pos = {v: i for i, v in enumerate(star)}
    bits = [0] * len(star)
    for i, s in enumerate(star):
        sinv = graph.inv(s)
        for t in star:
            if t != s and graph.is_generator(graph.mul(t, sinv)):
                bits[i] |= 1 << pos[t]
    return star, bits


def _maximum_cliques(bits: list[int]) -> list[int]:
    """All maximum cliques as bit sets, by pivoting Bron-Kerbosch with a size bound."""
    best = [0]
    found: list[int] = []

    def popcount(x: int) -> int:
        return bin(x).count("1")

    def expand(r: int, rsize: int, p: int, x: int) -> None:
        if not p and not x:
            if rsize > best[0]:
                best[0] = rsize
                found.clear()
            if rsize == best[0]:
                found.append(r)
            return
        if rsize + popcount(p) < best[0]:
            return
        pu = p | x
        pivot = max((u for u in _iter_bits(pu)), key=lambda u: popcount(p & bits[u]))
        for v in list(_iter_bits(p & ~bits[pivot])):
            bv = 1 << v
            expand(r | bv, rsize + 1, p & bits[v], x & bits[v])
            p &= ~bv
            x |= bv

    expand(0, 0, (1 << len(bits)) - 1, 0)
    return found


def _iter_bits(x: int) -> Iterable[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def max_cliques_through_e(graph: GcmGraph, cap: int = config.MATERIALIZE_CAP) -> list[CliqueRecord]:
    if graph.num_vertices > cap:
        raise TooLarge(f"{graph.num_vertices} vertices exceeds the clique cap {cap}")
    star, bits = _star_bitsets(graph)
    records = []
    for c in _maximum_cliques(bits):
        verts = tuple(sorted([0] + [star[i] for i in _iter_bits(c)]))
        records.append(CliqueRecord(verts, _classify(graph, verts)))
    records.sort(key=lambda r: r.vertices)
    return records


def clique_number(graph: GcmGraph, cap: int = config.MATERIALIZE_CAP) -> int:
    return len(max_cliques_through_e(graph, cap)[0])


def predicted_clique_number(m: int, n: int) -> int:
    return 4 if (m, n) == (2, 2) else max(m + 1, n)


def dispersed_star(graph: GcmGraph, x: int, j: int) -> frozenset[int]:
    """C(x, j) = {x^-1_[i,j) : i < j} ∪ {x_[j,k) : k > j}."""
    xi = int(graph.group.inv[x])
    out = {graph.interval_vertex(IntervalElement(xi, i, j)) for i in range(1, j)}
    out |= {graph.interval_vertex(IntervalElement(x, j, k)) for k in range(j + 1, graph.m + 2)}
    return frozenset(out)


def _classify(graph: GcmGraph, vertices: Sequence[int]) -> CliqueType:
    star = [v for v in vertices if v != 0]
    ivs = [graph.as_interval(v) for v in star]
    if not star:
        return CliqueType("Interval", ())
    wins = {iv.window() for iv in ivs}
    if len(wins) == 1:
        return CliqueType("Interval", next(iter(wins)))
    s = frozenset(star)
    for x in range(1, graph.n):
        for j in range(1, graph.m + 2):
            if dispersed_star(graph, x, j) == s:
                return CliqueType("Dispersed", (x, j))
    if len(wins) == len(star):
        # one vertex per interval: a dispersed shape outside the C(x, j) family
        return CliqueType("DispersedOther", ())
    return CliqueType("MixedInvalid", ())


def is_triangle_exception(graph: GcmGraph, vertices: Sequence[int]) -> bool:
    """Q* = {x_[i,j), x_[i,k), x_[j,k)} with o(x) = 2."""
    star = [graph.as_interval(v) for v in vertices if v != 0]
    if len(star) != 3 or any(iv is None for iv in star):
        return False
    xs = {iv.x for iv in star}
    if len(xs) != 1 or graph.group.elem_orders[next(iter(xs))] != 2:
        return False
    points = sorted({p for iv in star for p in iv.window()})
    if len(points) != 3:
        return False
    i, j, k = points
    return {iv.window() for iv in star} == {(i, j), (i, k), (j, k)}


def classify_clique(graph: GcmGraph, vertices: Sequence[int] | CliqueRecord) -> CliqueType:
    if isinstance(vertices, CliqueRecord):
        vertices = vertices.vertices
    vs = sorted(set(vertices))
    if 0 not in vs:
        raise NotAClique("the clique must contain e")
    for a in range(len(vs)):
        for b in range(a + 1, len(vs)):
            if not graph.adjacent(vs[a], vs[b]):
                raise NotAClique(f"{graph.vertex_name(vs[a])} and {graph.vertex_name(vs[b])} are not adjacent")
    return _classify(graph, vs)


def neighbor_graph(graph: GcmGraph, clique: CliqueRecord | Sequence[int]) -> InducedGraph:
    """N(Q*): the vertices of V(e) outside Q that are adjacent to some member of Q*."""
    vertices = clique.vertices if isinstance(clique, CliqueRecord) else tuple(clique)
    star = [v for v in vertices if v != 0]
    inside = set(vertices)
    nbrs = [
        s for s in graph.gen_set
        if s not in inside and any(graph.adjacent(s, q) for q in star)
    ]
    return induced(graph, nbrs)


def interval_clique(graph: GcmGraph, k: int, l: int) -> tuple[int, ...]:
    return tuple(sorted([0] + [graph.interval_vertex(IntervalElement(x, k, l)) for x in range(1, graph.n)]))


def dispersed_clique(graph: GcmGraph, x: int, j: int) -> tuple[int, ...]:
    return tuple(sorted([0, *dispersed_star(graph, x, j)]))


@dataclass
class CliqueSummary:
    size: int
    predicted: int
    types: Counter

    @property
    def ok(self) -> bool:
        return self.size == self.predicted and self.types.get("MixedInvalid", 0) == 0


def clique_summary(graph: GcmGraph) -> CliqueSummary:
    recs = max_cliques_through_e(graph)
    return CliqueSummary(len(recs[0]), predicted_clique_number(graph.m, graph.n), Counter(r.type.kind for r in recs))


def example_4_10_swap(graph: GcmGraph) -> np.ndarray:
    """On G_2(C3): swap (x, e) with (x^-1, x^-1) and fix every other vertex."""
    if graph.m != 2 or graph.n != 3:
        raise ValueError("the swap is defined on G_2(C3)")
    x = 1
    xi = int(graph.group.inv[x])
    a, b = graph.encode([x, 0]), graph.encode([xi, xi])
    img = np.arange(graph.num_vertices)
    img[a], img[b] = b, a
    return img
