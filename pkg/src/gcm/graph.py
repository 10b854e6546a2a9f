"""The graphs G_m(G) = Cay(G^m, S) where S is the set of interval elements.

A vertex (g_1, ..., g_m) is the integer sum g_i * n^(i-1), so g_1 is the least
significant digit and vertex 0 is the identity tuple.  Intervals are written
[k, l) with 1 <= k < l <= m+1, exactly as in the formulas they come from.
"""

from __future__ import annotations

import io
import itertools
import json
import math
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import networkx as nx
import numpy as np

from . import config
from .errors import BadParameters, IdentityElement, IdentityVertex, TooLarge
from .groups import GroupTable


@dataclass(frozen=True, order=True)
class IntervalElement:
    x: int
    k: int
    l: int

    def window(self) -> tuple[int, int]:
        return (self.k, self.l)


@dataclass(frozen=True)
class WeightDecomposition:
    boundaries: tuple[int, ...]  # i_1 < ... < i_{k+1}, 1-based
    values: tuple[int, ...]  # x_1, ..., x_k

    @property
    def weight(self) -> int:
        return len(self.values)

    def factors(self) -> list[IntervalElement]:
        """The factors as interval elements; interior identity runs are skipped."""
        b = self.boundaries
        return [IntervalElement(x, b[j], b[j + 1]) for j, x in enumerate(self.values) if x != 0]


def windows(m: int) -> list[tuple[int, int]]:
    """All intervals [k, l), ordered by k then l."""
    return [(k, l) for k in range(1, m + 1) for l in range(k + 1, m + 2)]


class GcmGraph:
    """The Cayley graph G_m(G).

    Small instances (n^m <= materialize cap) keep a dense adjacency matrix and a
    neighbour table; larger ones answer adjacency queries from the weight test.
    """

    def __init__(self, group: GroupTable, m: int, materialize_cap: int = config.MATERIALIZE_CAP,
                 oracle_cap: int = config.ORACLE_CAP):
        if m < 2:
            raise BadParameters("m must be at least 2")
        if group.order < 2:
            raise BadParameters("the group must be non-trivial")
        n = group.order
        if n**m > oracle_cap:
            raise TooLarge(f"|G|^m = {n**m} exceeds cap {oracle_cap}")
        self.group = group
        self.m = m
        self.n = n
        self.num_vertices = n**m
        self.materialize_cap = materialize_cap
        self.radix = np.array([n**i for i in range(m)], dtype=np.int64)
        self.degree = math.comb(m + 1, 2) * (n - 1)
        self.intervals = [IntervalElement(x, k, l) for k, l in windows(m) for x in range(1, n)]
        self.gen_set = [self.interval_vertex(iv) for iv in self.intervals]
        self._gen_lookup = {v: iv for v, iv in zip(self.gen_set, self.intervals)}

    def __repr__(self) -> str:
        return f"GcmGraph({self.group.label}, m={self.m})"

    @property
    def materialized(self) -> bool:
        return self.num_vertices <= self.materialize_cap

    # --- vertex encoding -----------------------------------------------------

    def encode(self, coords: Sequence[int]) -> int:
        if len(coords) != self.m:
            raise BadParameters(f"expected {self.m} coordinates")
        return int(sum(int(c) * int(r) for c, r in zip(coords, self.radix)))

    def decode(self, v: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.m):
            v, r = divmod(v, self.n)
            out.append(r)
        return tuple(out)

    @cached_property
    def coords(self) -> np.ndarray:
        """(n^m, m) array of element indices for every vertex."""
        idx = np.arange(self.num_vertices, dtype=np.int64)
        c = (idx[:, None] // self.radix[None, :]) % self.n
        c.setflags(write=False)
        return c

    def encode_array(self, coords: np.ndarray) -> np.ndarray:
        return coords @ self.radix

    def vertex_name(self, v: int) -> str:
        return "(" + ",".join(self.group.names[g] for g in self.decode(v)) + ")"

    def parse_vertex(self, text: str) -> int:
        body = text.strip().strip("()")
        names = [s.strip() for s in body.split(",")]
        return self.encode([self.group.index(s) for s in names])

    def interval_vertex(self, iv: IntervalElement) -> int:
        if iv.x == 0:
            raise IdentityElement("interval elements need x != e")
        if not 1 <= iv.k < iv.l <= self.m + 1:
            raise BadParameters(f"bad window [{iv.k},{iv.l})")
        return int(sum(iv.x * int(self.radix[i - 1]) for i in range(iv.k, iv.l)))

    def as_interval(self, v: int) -> IntervalElement | None:
        return self._gen_lookup.get(v)

    # --- group structure on G^m ----------------------------------------------

    def mul(self, u: int, v: int) -> int:
        mt = self.group.mult
        return self.encode([mt[a, b] for a, b in zip(self.decode(u), self.decode(v))])

    def inv(self, v: int) -> int:
        return self.encode([self.group.inv[a] for a in self.decode(v)])

    def quotient(self, v: int, u: int) -> int:
        """The left quotient v * u^-1."""
        return self.mul(v, self.inv(u))

    @cached_property
    def right_mult_table(self) -> np.ndarray:
        """R[g, v] = v * g for every pair of vertices (only when materialized)."""
        self._require_materialized()
        c = self.coords
        prod = self.group.mult[c[None, :, :], c[:, None, :]]
        return self.encode_array(prod)

    # --- weights and adjacency ------------------------------------------------

    @cached_property
    def weights(self) -> np.ndarray:
        """Weight of every vertex (0 for the identity)."""
        c = self.coords
        nz = c != 0
        any_nz = nz.any(axis=1)
        first = np.argmax(nz, axis=1)
        last = self.m - 1 - np.argmax(nz[:, ::-1], axis=1)
        changes = c[:, 1:] != c[:, :-1]
        pos = np.arange(self.m - 1)[None, :]
        inside = (pos >= first[:, None]) & (pos < last[:, None])
        w = np.where(any_nz, 1 + (changes & inside).sum(axis=1), 0)
        w.setflags(write=False)
        return w

    def weight(self, v: int) -> int:
        return weight_decomposition(self, v).weight if v else 0

    def is_generator(self, v: int) -> bool:
        return v in self._gen_lookup

    def adjacent(self, u: int, v: int) -> bool:
        return u != v and self.is_generator(self.quotient(v, u))

    @cached_property
    def neighbor_table(self) -> np.ndarray:
        """T[v, s] = S[s] * v, the neighbours of every vertex.

        Available up to the numeric cap, since the sparse eigensolver needs it
        beyond the dense materialization limit.
        """
        if self.num_vertices > max(self.materialize_cap, config.NUMERIC_CAP):
            raise TooLarge(f"{self.num_vertices} vertices is too many for a neighbour table")
        c = self.coords
        t = np.empty((self.num_vertices, self.degree), dtype=np.int64)
        for j, s in enumerate(self.gen_set):
            t[:, j] = self.encode_array(self.group.mult[np.array(self.decode(s))[None, :], c])
        t.setflags(write=False)
        return t

    @cached_property
    def adjacency(self) -> np.ndarray:
        """Dense boolean adjacency matrix."""
        self._require_materialized()
        a = np.zeros((self.num_vertices, self.num_vertices), dtype=bool)
        rows = np.repeat(np.arange(self.num_vertices), self.degree)
        a[rows, self.neighbor_table.ravel()] = True
        a.setflags(write=False)
        return a

    @cached_property
    def bitsets(self) -> list[int]:
        """Adjacency rows as Python integer bit sets."""
        out = []
        for row in self.neighbor_table:
            b = 0
            for w in row.tolist():
                b |= 1 << w
            out.append(b)
        return out

    def neighbors(self, v: int) -> list[int]:
        if "neighbor_table" in self.__dict__ or self.materialized:
            return sorted(self.neighbor_table[v].tolist())
        return sorted(self.mul(s, v) for s in self.gen_set)

    def edges(self) -> Iterator[tuple[int, int]]:
        for v in range(self.num_vertices):
            for w in self.neighbors(v):
                if v < w:
                    yield v, w

    def num_edges(self) -> int:
        return self.num_vertices * self.degree // 2

    def common_neighbors(self, u: int, v: int) -> list[int]:
        """V(u) ∩ V(v), computed as V(e) ∩ V(v u^-1) translated back by u."""
        if u == v:
            raise BadParameters("common neighbours need two distinct vertices")
        w = self.quotient(v, u)
        winv = self.inv(w)
        core = [s for s in self.gen_set if self.is_generator(self.mul(s, winv))]
        return sorted(self.mul(s, u) for s in core)

    def _require_materialized(self) -> None:
        if not self.materialized:
            raise TooLarge(f"{self.num_vertices} vertices exceeds the materialize cap {self.materialize_cap}")

    # --- export -----------------------------------------------------------------

    def summary(self) -> dict:
        return {
            "group": self.group.label,
            "n": self.n,
            "m": self.m,
            "vertices": self.num_vertices,
            "degree": self.degree,
            "edges": self.num_edges(),
        }

    def to_json(self) -> str:
        return json.dumps(self.summary(), sort_keys=True)

    def to_dot(self) -> str:
        out = io.StringIO()
        out.write(f'graph "G{self.m}({self.group.label})" {{\n')
        for v in range(self.num_vertices):
            out.write(f'  {v} [label="{self.vertex_name(v)}"];\n')
        for u, v in self.edges():
            out.write(f"  {u} -- {v};\n")
        out.write("}\n")
        return out.getvalue()

    def to_csv(self) -> str:
        """Adjacency matrix as 0/1 rows."""
        a = self.adjacency
        return "\n".join(",".join("1" if x else "0" for x in row) for row in a) + "\n"


def build_graph(G: GroupTable, m: int, materialize_cap: int = config.MATERIALIZE_CAP,
                oracle_cap: int = config.ORACLE_CAP) -> GcmGraph:
    return GcmGraph(G, m, materialize_cap, oracle_cap)


def weight_decomposition(graph: GcmGraph, v: int) -> WeightDecomposition:
    if v == 0:
        raise IdentityVertex("the identity has no weight decomposition")
    g = graph.decode(v)
    support = [i for i, x in enumerate(g) if x]
    lo, hi = support[0], support[-1] + 1
    bounds, values = [lo + 1], []
    for i in range(lo, hi):
        if i == lo or g[i] != g[i - 1]:
            if i > lo:
                bounds.append(i + 1)
            values.append(g[i])
    bounds.append(hi + 1)
    return WeightDecomposition(tuple(bounds), tuple(values))


def reassemble(graph: GcmGraph, dec: WeightDecomposition) -> int:
    coords = [0] * graph.m
    for j, x in enumerate(dec.values):
        for i in range(dec.boundaries[j], dec.boundaries[j + 1]):
            coords[i - 1] = x
    return graph.encode(coords)


def interval_product_in_S(G: GroupTable, h: IntervalElement, g: IntervalElement) -> bool:
    """Whether h_[i,j) g_[k,l) is again an interval element, decided by the three conditions."""
    i, j, k, l = h.k, h.l, g.k, g.l
    inv_g = int(G.inv[g.x])
    if h.x != inv_g and (i, j) == (k, l):
        return True
    if h.x == g.x and (j == k or i == l):
        return True
    if h.x == inv_g and ((i != k and j == l) or (i == k and j != l)):
        return True
    return False


# --- the weight-3 common-neighbour table -------------------------------------


def predicted_weight3_count(G: GroupTable, x: int, y: int, z: int) -> tuple[int, str]:
    """Predicted |V(e) ∩ V(g)| for g = x_[i1,i2) y_[i2,i3) z_[i3,i4), with a case label."""
    o = G.elem_orders
    xinv = int(G.inv[x])
    if x == z:
        if y == 0:
            return (6, "x e x, o(x)=2") if o[x] == 2 else (4, "x e x, o(x)>2")
        if y == G.mul(x, x):
            return 4, "x x^2 x"
        return 2, "x y x, x^2 != y != e"
    if z == xinv:
        return (4, "x e x^-1") if y == 0 else (0, "x y x^-1, y != e")
    if y == 0:
        return 2, "x e z, x != z != x^-1"
    left = z == G.mul(xinv, y)
    right = z == G.mul(y, xinv)
    if left and right:
        return 2, "xy = yx, z = x^-1 y"
    if left or right:
        return 1, "xy != yx, z in {x^-1 y, y x^-1}"
    return 0, "z not in {x^-1 y, y x^-1}"


@dataclass
class Weight3Profile:
    histogram: dict[int, int]
    by_case: dict[str, Counter]
    mismatches: list[tuple[int, int, int]]  # (vertex, observed, predicted)

    @property
    def ok(self) -> bool:
        return not self.mismatches and set(self.histogram) <= {0, 1, 2, 4, 6}


def common_count_with_e(graph: GcmGraph, v: int) -> int:
    vinv = graph.inv(v)
    return sum(1 for s in graph.gen_set if graph.is_generator(graph.mul(s, vinv)))


def weight3_profile(graph: GcmGraph) -> Weight3Profile:
    if graph.m < 3:
        raise BadParameters("weight 3 needs m >= 3")
    hist: Counter = Counter()
    by_case: dict[str, Counter] = {}
    bad = []
    for v in np.flatnonzero(graph.weights == 3).tolist():
        dec = weight_decomposition(graph, v)
        x, y, z = dec.values
        pred, case = predicted_weight3_count(graph.group, x, y, z)
        obs = common_count_with_e(graph, v)
        hist[obs] += 1
        by_case.setdefault(case, Counter())[obs] += 1
        if obs != pred:
            bad.append((v, obs, pred))
    return Weight3Profile(dict(sorted(hist.items())), by_case, bad)


# --- interval subgraphs and the interval meta-graph --------------------------


@dataclass
class InducedGraph:
    vertices: list[int]
    adjacency: np.ndarray

    @property
    def degrees(self) -> list[int]:
        return self.adjacency.sum(axis=1).astype(int).tolist()

    def degree_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(self.degrees).items()))

    def is_regular(self) -> bool:
        return len(set(self.degrees)) <= 1

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(len(self.vertices)))
        rows, cols = np.nonzero(np.triu(self.adjacency, 1))
        g.add_edges_from(zip(rows.tolist(), cols.tolist()))
        return g


def induced(graph: GcmGraph, vertices: Iterable[int]) -> InducedGraph:
    vs = sorted(set(vertices))
    a = np.array([[graph.adjacent(u, v) for v in vs] for u in vs], dtype=bool).reshape(len(vs), len(vs))
    return InducedGraph(vs, a)


def interval_subgraph(graph: GcmGraph, x: int) -> InducedGraph:
    """I_m(x): the interval elements built from x and from x^-1."""
    if x == 0:
        raise IdentityElement("I_m(x) needs x != e")
    xi = int(graph.group.inv[x])
    vs = [graph.interval_vertex(IntervalElement(y, k, l)) for k, l in windows(graph.m) for y in {x, xi}]
    return induced(graph, vs)


@dataclass
class MetaGraph:
    intervals: list[tuple[int, int]]
    adjacency: np.ndarray

    @property
    def complement(self) -> np.ndarray:
        c = ~self.adjacency
        np.fill_diagonal(c, False)
        return c

    def complement_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.intervals)
        for a, b in itertools.combinations(range(len(self.intervals)), 2):
            if self.complement[a, b]:
                g.add_edge(self.intervals[a], self.intervals[b])
        return g

    def complement_is_kneser(self) -> bool:
        """Complement edges are exactly the disjoint endpoint pairs (KG_{m+1,2})."""
        for a, b in itertools.combinations(range(len(self.intervals)), 2):
            disjoint = not set(self.intervals[a]) & set(self.intervals[b])
            if bool(self.complement[a, b]) != disjoint:
                return False
        return True


def interval_meta_graph(m: int) -> MetaGraph:
    """B_m: intervals joined when their endpoint pairs share exactly one point."""
    if m < 2:
        raise BadParameters("m must be at least 2")
    ivs = windows(m)
    a = np.array([[len(set(p) & set(q)) == 1 for q in ivs] for p in ivs], dtype=bool)
    return MetaGraph(ivs, a)


def graph_invariants(g: nx.Graph) -> dict:
    """Vertex count, degree set, girth and diameter, as used for the Petersen check."""
    degs = sorted({d for _, d in g.degree()})
    connected = g.number_of_nodes() > 0 and nx.is_connected(g)
    return {
        "vertices": g.number_of_nodes(),
        "edges": g.number_of_edges(),
        "degrees": degs,
        "girth": nx.girth(g),
        "diameter": nx.diameter(g) if connected else math.inf,
        "components": nx.number_connected_components(g),
    }
