"""Canonical labelling and automorphism search by individualization-refinement.

Colours are always canonical ranks, so every quantity recorded along a search
path (the trace) is independent of the input labelling.  The canonical form
is the largest (trace, sorted edge list) over all leaves; two graphs are
isomorphic exactly when their forms coincide.

Search order: descend the first path, then revisit its levels from the
deepest upwards.  Automorphisms found along the way prune siblings that lie
in one orbit, and |Aut| is the product of the orbit lengths of the first-path
vertices in the point-wise stabiliser chain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import config
from .errors import TooLarge


def _padded_neighbors(adj: np.ndarray) -> np.ndarray:
    deg = adj.sum(axis=1)
    width = int(deg.max()) if adj.size else 0
    out = np.full((adj.shape[0], width), -1, dtype=np.int64)
    for v in range(adj.shape[0]):
        nb = np.flatnonzero(adj[v])
        out[v, : nb.size] = nb
    return out


def as_adjacency(graph) -> np.ndarray:
    """Dense boolean adjacency from a GcmGraph, an InducedGraph or a matrix."""
    a = getattr(graph, "adjacency", graph)
    a = np.asarray(a, dtype=bool)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("adjacency must be square")
    return a


def _rank(keys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    uniq, inv = np.unique(keys, axis=0, return_inverse=True)
    return inv.reshape(-1).astype(np.int64), uniq


@dataclass
class CanonicalForm:
    """Canonical relabelling plus the fingerprint it produces."""

    labeling: np.ndarray  # labeling[v] = canonical position of v
    trace: tuple
    edges: np.ndarray  # sorted (i, j) pairs, i < j, under the labelling

    @property
    def fingerprint(self) -> tuple:
        return (self.labeling.size, self.trace, self.edges.tobytes())

    @property
    def digest(self) -> str:
        """Short display hash; comparisons use the full fingerprint."""
        import hashlib

        h = hashlib.sha256(repr(self.trace).encode())
        h.update(self.edges.tobytes())
        return h.hexdigest()[:16]

    def same_as(self, other: "CanonicalForm") -> bool:
        return (self.labeling.size == other.labeling.size and self.trace == other.trace
                and np.array_equal(self.edges, other.edges))


@dataclass
class SearchResult:
    order: int
    generators: list[np.ndarray]
    form: CanonicalForm
    nodes: int
    orbit_lengths: list[int] = field(default_factory=list)


class _Search:
    def __init__(self, adj: np.ndarray):
        self.adj = adj
        self.n = adj.shape[0]
        self.nbrs = _padded_neighbors(adj)
        self.mask = self.nbrs < 0
        self.gens: list[np.ndarray] = []
        self.nodes = 0

    # refinement ---------------------------------------------------------------------
    def initial_colors(self) -> tuple[np.ndarray, bytes]:
        """Degree plus the multiset of common-neighbour counts along edges."""
        a = self.adj.astype(np.float32)
        common = np.rint(a @ a).astype(np.int64)
        width = self.nbrs.shape[1]
        keys = np.full((self.n, width + 1), -1, dtype=np.int64)
        for v in range(self.n):
            vals = np.sort(common[v, self.adj[v]])
            keys[v, 0] = vals.size
            keys[v, 1: 1 + vals.size] = vals
        colors, uniq = _rank(keys)
        return colors, _piece(uniq)

    def refine(self, colors: np.ndarray) -> tuple[np.ndarray, tuple]:
        """Equitable refinement; returns the colouring and this node's trace entry."""
        pieces = []
        k = int(colors.max()) + 1 if self.n else 0
        while True:
            nc = np.where(self.mask, -1, colors[self.nbrs])
            nc.sort(axis=1)
            keys = np.concatenate([colors[:, None], nc], axis=1)
            colors, uniq = _rank(keys)
            pieces.append(_piece(uniq))
            k2 = uniq.shape[0]
            if k2 == k:
                break
            k = k2
        return colors, tuple(pieces)

    @staticmethod
    def individualize(colors: np.ndarray, v: int) -> np.ndarray:
        c = colors * 2 + 1
        c[v] -= 1
        return np.unique(c, return_inverse=True)[1].reshape(-1).astype(np.int64)

    @staticmethod
    def target_cell(colors: np.ndarray) -> np.ndarray | None:
        sizes = np.bincount(colors)
        candidates = np.flatnonzero(sizes > 1)
        if candidates.size == 0:
            return None
        best = candidates[np.argmin(sizes[candidates])]
        return np.flatnonzero(colors == best)

    def leaf_edges(self, colors: np.ndarray) -> np.ndarray:
        i, j = np.nonzero(np.triu(self.adj, 1))
        a, b = colors[i], colors[j]
        e = np.stack([np.minimum(a, b), np.maximum(a, b)], axis=1).astype(np.int32)
        order = np.lexsort((e[:, 1], e[:, 0]))
        return np.ascontiguousarray(e[order])

    # orbits --------------------------------------------------------------------------
    def orbits_fixing(self, prefix: list[int]) -> np.ndarray:
        """Orbit representative of every vertex under generators fixing prefix point-wise."""
        parent = np.arange(self.n)

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = int(parent[x])
            return x

        for g in self.gens:
            if prefix and not np.array_equal(g[prefix], prefix):
                continue
            for v in np.flatnonzero(g != np.arange(self.n)).tolist():
                a, b = find(v), find(int(g[v]))
                if a != b:
                    parent[max(a, b)] = min(a, b)
        return np.array([find(v) for v in range(self.n)])

    # main search ------------------------------------------------------------------------
    def run(self) -> SearchResult:
        if self.n == 0:
            empty = CanonicalForm(np.zeros(0, dtype=np.int64), (), np.zeros((0, 2), dtype=np.int32))
            return SearchResult(1, [], empty, 0)
        colors, root_piece = self.initial_colors()
        colors, piece = self.refine(colors)
        root_trace = ((root_piece,) + piece,)

        # first path
        path_colors = [colors]
        path_trace = [root_trace]
        path_cells: list[np.ndarray] = []
        prefix: list[int] = []
        while True:
            self.nodes += 1
            cell = self.target_cell(colors)
            if cell is None:
                break
            v = int(cell[0])
            path_cells.append(cell)
            prefix.append(v)
            colors, piece = self.refine(self.individualize(colors, v))
            path_colors.append(colors)
            path_trace.append(path_trace[-1] + (piece,))
        self.first_trace = path_trace[-1]
        self.first_colors = colors
        self.first_edges = self.leaf_edges(colors)
        self.first_prefix = prefix
        self.best = (self.first_trace, self.first_edges.tobytes(), colors, self.first_edges)
        self.path_trace = path_trace

        orbit_lengths = []
        for k in range(len(prefix) - 1, -1, -1):
            fixed = prefix[:k]
            cell = path_cells[k]
            explored = [prefix[k]]
            for w in cell.tolist():
                if w == prefix[k]:
                    continue
                reps = self.orbits_fixing(fixed)
                if reps[w] in {reps[u] for u in explored}:
                    continue
                explored.append(w)
                child = self.refine(self.individualize(path_colors[k], w))
                self.explore(child[0], path_trace[k] + (child[1],), fixed + [w])
            reps = self.orbits_fixing(fixed)
            orbit_lengths.append(int(np.count_nonzero(reps == reps[prefix[k]])))
        orbit_lengths.reverse()

        best_trace, _, best_colors, best_edges = self.best
        form = CanonicalForm(best_colors.copy(), best_trace, best_edges)
        return SearchResult(math.prod(orbit_lengths), self.gens, form, self.nodes, orbit_lengths)

    def explore(self, colors: np.ndarray, trace: tuple, prefix: list[int]) -> bool:
        """DFS below a non-first-path node; True once a leaf equivalent to the first leaf is found."""
        self.nodes += 1
        depth = len(trace)
        on_first = depth <= len(self.path_trace) and trace == self.path_trace[depth - 1]
        best_trace = self.best[0]
        if not on_first and trace < best_trace[:depth]:
            return False
        cell = self.target_cell(colors)
        if cell is None:
            edges = self.leaf_edges(colors)
            eb = edges.tobytes()
            if on_first and trace == self.first_trace and np.array_equal(edges, self.first_edges):
                self._add_automorphism(self.first_colors, colors)
                return True
            key = (trace, eb)
            best_key = (self.best[0], self.best[1])
            if key == best_key:
                self._add_automorphism(self.best[2], colors)
            elif key > best_key:
                self.best = (trace, eb, colors, edges)
            return False
        explored: list[int] = []
        for w in cell.tolist():
            if explored:
                reps = self.orbits_fixing(prefix)
                if reps[w] in {reps[u] for u in explored}:
                    continue
            explored.append(w)
            child, piece = self.refine(self.individualize(colors, w))
            if self.explore(child, trace + (piece,), prefix + [w]):
                return True
        return False

    def _add_automorphism(self, lab_a: np.ndarray, lab_b: np.ndarray) -> None:
        inv_b = np.empty_like(lab_b)
        inv_b[lab_b] = np.arange(self.n)
        g = inv_b[lab_a]
        if not np.array_equal(g, np.arange(self.n)):
            self.gens.append(g)


def _piece(uniq: np.ndarray) -> tuple:
    return (uniq.shape, uniq.tobytes())


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise TooLarge(f"{n} vertices exceeds the IR cap {cap}")


def automorphism_search(graph, ir_cap: int = config.IR_CAP) -> SearchResult:
    adj = as_adjacency(graph)
    _check_cap(adj.shape[0], ir_cap)
    return _Search(adj).run()


def canonical_form(graph, ir_cap: int = config.IR_CAP) -> CanonicalForm:
    return automorphism_search(graph, ir_cap).form


def find_isomorphism(graph_a, graph_b, ir_cap: int = config.IR_CAP) -> np.ndarray | None:
    """A vertex map F with A[u, v] = B[F(u), F(v)], or None."""
    fa, fb = canonical_form(graph_a, ir_cap), canonical_form(graph_b, ir_cap)
    if not fa.same_as(fb):
        return None
    inv_b = np.empty_like(fb.labeling)
    inv_b[fb.labeling] = np.arange(fb.labeling.size)
    return inv_b[fa.labeling]
