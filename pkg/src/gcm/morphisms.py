"""Explicit automorphisms of G_m(G), group orders and graph isomorphism.

Every map is a VertexPermutation composed left to right, matching the
exponent notation v^{pq} = (v^p)^q.  Coordinates are 1-based in docstrings
and 0-based in code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import config
from .canon import automorphism_search, canonical_form
from .errors import (BadParameters, ExceptionalCase, IndexOutOfRange, NotAbelian,
                     NotAnAutomorphism, NotAnIsomorphism, PreconditionFailed, TooLarge)
from .graph import GcmGraph, IntervalElement, build_graph, induced, windows
from .groups import GroupMap, GroupTable, aut_generators, automorphism_group, groups_isomorphic
from .perms import PermGroup, VertexPermutation, group_order

__all__ = [
    "transfer", "homogeneous_aut", "gamma", "tau", "omega", "epsilon", "tau_i",
    "conjugation", "is_graph_automorphism", "group_order", "AutPrediction",
    "predicted_aut_order", "is_exceptional", "assemble_full_aut", "canonical_aut_order",
    "graphs_isomorphic", "NotHomogeneous", "extract_group_iso", "homogeneous_map",
    "verify_proposition_42", "gamma_relations", "tau_product_holds", "omega_fixed_points",
    "predicted_omega_fixed_points", "omega_homomorphism_witness", "conjugation_identity",
    "edge_failure",
]


def _from_coords(graph: GcmGraph, new: np.ndarray, label: str) -> VertexPermutation:
    return VertexPermutation(graph.encode_array(new), label)


# --- the named automorphisms ---------------------------------------------------------


def transfer(graph: GcmGraph, g: int) -> VertexPermutation:
    """T_g: v -> v g."""
    c = graph.coords
    gc = np.asarray(graph.decode(g))
    return _from_coords(graph, graph.group.mult[c, gc[None, :]], f"T{graph.vertex_name(g)}")


def homogeneous_aut(graph: GcmGraph, f: GroupMap) -> VertexPermutation:
    """Apply f in every coordinate."""
    if f.domain is not graph.group and f.domain.order != graph.n:
        raise NotAnAutomorphism("f is defined on a different group")
    if not (f.is_bijective() and f.is_homomorphism()):
        raise NotAnAutomorphism("f is not an automorphism of G")
    img = np.asarray(f.image)
    return _from_coords(graph, img[graph.coords], "f" if not f.is_identity() else "id")


def conjugation(graph: GcmGraph, a: int) -> VertexPermutation:
    """f_a: x -> a^-1 x a in every coordinate."""
    G = graph.group
    ai = int(G.inv[a])
    c = graph.coords
    return _from_coords(graph, G.mult[G.mult[ai, c], a], f"f_{G.names[a]}")


def gamma(graph: GcmGraph, i: int) -> VertexPermutation:
    """gamma_i: g_i -> g_{i-1} g_i^-1 g_{i+1} with g_0 = g_{m+1} = e.

    Built for every group; it is a graph automorphism only when G is abelian.
    """
    if not 1 <= i <= graph.m:
        raise IndexOutOfRange(f"gamma_{i} needs 1 <= i <= {graph.m}")
    G = graph.group
    c = graph.coords
    zero = np.zeros(graph.num_vertices, dtype=np.int64)
    left = c[:, i - 2] if i >= 2 else zero
    right = c[:, i] if i < graph.m else zero
    new = c.copy()
    new[:, i - 1] = G.mult[G.mult[left, G.inv[c[:, i - 1]]], right]
    return _from_coords(graph, new, f"gamma{i}")


def tau(graph: GcmGraph) -> VertexPermutation:
    """Reverse the coordinates."""
    return _from_coords(graph, graph.coords[:, ::-1], "tau")


def omega(graph: GcmGraph) -> VertexPermutation:
    """(g_1, ..., g_m) -> (g_1^-1 g_2, ..., g_1^-1 g_m, g_1^-1)."""
    G = graph.group
    c = graph.coords
    g1i = G.inv[c[:, 0]]
    new = np.empty_like(c)
    new[:, :-1] = G.mult[g1i[:, None], c[:, 1:]]
    new[:, -1] = g1i
    return _from_coords(graph, new, "omega")


def epsilon(graph: GcmGraph) -> VertexPermutation:
    """Vertex-wise inversion."""
    return _from_coords(graph, graph.group.inv[graph.coords], "epsilon")


def tau_i(graph: GcmGraph) -> list[VertexPermutation]:
    """tau_1, ..., tau_p from the gamma recursion, p = floor((m+1)/2).

    For m = 2p-1 the innermost element is gamma_p; for m = 2p it is
    gamma_{p+1} gamma_p gamma_{p+1}.  Each step conjugates by a pair of gammas
    working outwards.
    """
    if not graph.group.is_abelian:
        raise NotAbelian("the tau_i recursion uses gammas, which need an abelian group")
    m = graph.m
    p = (m + 1) // 2
    g = {i: gamma(graph, i) for i in range(1, m + 1)}
    out: dict[int, VertexPermutation] = {}
    if m % 2 == 1:
        out[p] = g[p]
        for j in range(1, p):
            a, b = g[p - j], g[p + j]
            out[p - j] = a * b * out[p - j + 1] * b * a
    else:
        out[p] = g[p + 1] * g[p] * g[p + 1]
        for j in range(1, p):
            a, b = g[p - j], g[p + 1 + j]
            out[p - j] = a * b * out[p - j + 1] * b * a
    perms = []
    for i in range(1, p + 1):
        perms.append(VertexPermutation(out[i].image, f"tau_{i}"))
    return perms


# --- checks --------------------------------------------------------------------------


def is_graph_automorphism(graph: GcmGraph, p: VertexPermutation | np.ndarray,
                          cap: int = config.MATERIALIZE_CAP) -> bool:
    """Exhaustive edge check: N(v)^p = N(v^p) for every vertex v."""
    if graph.num_vertices > cap:
        raise TooLarge(f"{graph.num_vertices} vertices exceeds the exhaustive cap {cap}")
    img = p.image if isinstance(p, VertexPermutation) else np.asarray(p)
    if img.shape != (graph.num_vertices,):
        return False
    t = graph.neighbor_table
    return bool(np.array_equal(np.sort(img[t], axis=1), np.sort(t[img], axis=1)))


def edge_failure(graph: GcmGraph, p: VertexPermutation) -> tuple[int, int] | None:
    """An edge u ~ v whose image is not an edge, or None."""
    img = p.image
    t = graph.neighbor_table
    for u in range(graph.num_vertices):
        for v in t[u].tolist():
            if not graph.adjacent(int(img[u]), int(img[v])):
                return u, v
    return None


# --- orders ----------------------------------------------------------------------------


@dataclass(frozen=True)
class AutPrediction:
    order: int | None  # None when no order is stated for an exceptional case
    exceptional: bool
    formula: str


def is_exceptional(G: GroupTable, m: int) -> bool:
    """Parameters outside the abelian automorphism theorem: (m, |G|) = (2, 3) or m = 3 at exponent 2."""
    return G.is_abelian and ((m == 2 and G.order == 3) or (m == 3 and G.exponent == 2))


def predicted_aut_order(G: GroupTable, m: int) -> AutPrediction:
    if m < 2 or G.order < 2:
        raise BadParameters("need m >= 2 and a non-trivial group")
    n = G.order
    if is_exceptional(G, m):
        if m == 2:
            return AutPrediction(6**4, True, "(S3 x S3 x S3) : S3")
        if n == 2:
            return AutPrediction(2**4 * 24, True, "(C2)^4 : S4")
        return AutPrediction(None, True, "no stated order")
    aut = len(automorphism_group(G))
    if G.is_abelian:
        return AutPrediction(n**m * aut * math.factorial(m + 1), False, "|G|^m |Aut G| (m+1)!")
    return AutPrediction(n**m * aut * 2 * (m + 1), False, "|G|^m |Aut G| 2(m+1)")


def transfer_generators(graph: GcmGraph) -> list[VertexPermutation]:
    """T_g for g a group generator placed in a single coordinate."""
    out = []
    for x in graph.group.generators:
        for k in range(1, graph.m + 1):
            out.append(transfer(graph, graph.interval_vertex(IntervalElement(x, k, k + 1))))
    return out


def assemble_full_aut(G: GroupTable, m: int, graph: GcmGraph | None = None) -> PermGroup:
    """Transfers, homogeneous automorphisms and either the gammas or tau, omega."""
    if is_exceptional(G, m):
        raise ExceptionalCase(f"({G.label}, m={m}) is exceptional; use canonical_aut_order")
    graph = graph or build_graph(G, m)
    gens = transfer_generators(graph)
    gens += [homogeneous_aut(graph, f) for f in aut_generators(G)]
    if G.is_abelian:
        gens += [gamma(graph, i) for i in range(1, m + 1)]
    else:
        gens += [tau(graph), omega(graph)]
    return PermGroup(gens, graph.num_vertices)


def canonical_aut_order(graph, ir_cap: int = config.IR_CAP) -> int:
    """|Aut| from the individualization-refinement search."""
    return automorphism_search(graph, ir_cap).order


# --- isomorphism ---------------------------------------------------------------------


def graphs_isomorphic(graph_a, graph_b, ir_cap: int = config.IR_CAP) -> bool:
    fa = canonical_form(graph_a, ir_cap)
    fb = canonical_form(graph_b, ir_cap)
    return fa.same_as(fb)


@dataclass(frozen=True)
class NotHomogeneous:
    reason: str

    def __bool__(self) -> bool:
        return False


def homogeneous_map(graph_a: GcmGraph, graph_b: GcmGraph, f: GroupMap) -> VertexPermutation:
    """The vertex map (g_1..g_m) -> (f(g_1)..f(g_m)) from G_m(G) to G_m(H)."""
    img = np.asarray(f.image)
    return VertexPermutation(graph_b.encode_array(img[graph_a.coords]), "F")


def extract_group_iso(graph_a: GcmGraph, graph_b: GcmGraph,
                      F: VertexPermutation | Sequence[int]) -> GroupMap | NotHomogeneous:
    """Recover f with F = f x ... x f from a homogeneous graph isomorphism."""
    img = np.asarray(F.image if isinstance(F, VertexPermutation) else F, dtype=np.int64)
    if graph_a.m != graph_b.m or graph_a.num_vertices != graph_b.num_vertices:
        raise NotAnIsomorphism("the graphs have different sizes")
    if img.shape != (graph_a.num_vertices,) or np.unique(img).size != img.size:
        raise NotAnIsomorphism("F is not a bijection")
    tb = graph_b.neighbor_table
    if not np.array_equal(np.sort(img[graph_a.neighbor_table], axis=1), np.sort(tb[img], axis=1)):
        raise NotAnIsomorphism("F does not preserve edges")
    if img[0] != 0:
        return NotHomogeneous("F(e) != e")
    for k, l in windows(graph_a.m):
        for x in range(1, graph_a.n):
            w = int(img[graph_a.interval_vertex(IntervalElement(x, k, l))])
            iv = graph_b.as_interval(w)
            if iv is None or iv.window() != (k, l):
                return NotHomogeneous(f"F moves the interval [{k},{l}) elsewhere")
    f = [0] * graph_a.n
    for x in range(1, graph_a.n):
        f[x] = graph_b.as_interval(int(img[graph_a.interval_vertex(IntervalElement(x, 1, 2))])).x
    fmap = GroupMap(graph_a.group, graph_b.group, tuple(f))
    if not np.array_equal(homogeneous_map(graph_a, graph_b, fmap).image, img):
        return NotHomogeneous("F is not coordinatewise")
    if not (fmap.is_bijective() and fmap.is_homomorphism()):
        return NotHomogeneous("the coordinate map is not a group isomorphism")
    return fmap


def verify_proposition_42(G: GroupTable, H: GroupTable, m: int, ir_cap: int = config.IR_CAP) -> bool:
    """Neighbourhoods of e agree for groups of equal order and equal involution count."""
    if G.order != H.order:
        raise PreconditionFailed(f"orders differ: {G.order} vs {H.order}")
    if G.involution_count != H.involution_count:
        raise PreconditionFailed(f"involution counts differ: {G.involution_count} vs {H.involution_count}")
    ga, gb = build_graph(G, m), build_graph(H, m)
    return graphs_isomorphic(induced(ga, ga.gen_set), induced(gb, gb.gen_set), ir_cap)


# --- relation checks ------------------------------------------------------------------


@dataclass
class RelationReport:
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def gamma_relations(graph: GcmGraph) -> RelationReport:
    """Coxeter relations of the gammas and the order of the group they generate."""
    m = graph.m
    g = [gamma(graph, i) for i in range(1, m + 1)]
    rep = RelationReport()
    for i in range(m):
        rep.checks[f"gamma{i + 1}^2"] = (g[i] * g[i]).is_identity()
        if i + 1 < m:
            rep.checks[f"(gamma{i + 1}gamma{i + 2})^3"] = ((g[i] * g[i + 1]) ** 3).is_identity()
        for j in range(i + 2, m):
            rep.checks[f"gamma{i + 1}gamma{j + 1} commute"] = g[i] * g[j] == g[j] * g[i]
    for i in range(m):
        for j in range(0, m - i):
            prod = g[i]
            for t in range(i + 1, i + j + 1):
                prod = prod * g[t]
            rep.checks[f"order gamma{i + 1}..gamma{i + j + 1} = {j + 2}"] = prod.order() == j + 2
    rep.checks[f"|Gamma| = {m + 1}!"] = group_order(g) == math.factorial(m + 1)
    if graph.num_vertices <= config.MATERIALIZE_CAP:
        rep.checks["automorphisms"] = all(is_graph_automorphism(graph, x) for x in g)
    return rep


def tau_product_holds(graph: GcmGraph) -> RelationReport:
    """tau_i pairwise commute and tau_1 ... tau_p = epsilon tau."""
    ts = tau_i(graph)
    rep = RelationReport()
    for a in range(len(ts)):
        for b in range(a + 1, len(ts)):
            rep.checks[f"tau_{a + 1} tau_{b + 1} commute"] = ts[a] * ts[b] == ts[b] * ts[a]
    prod = ts[0]
    for t in ts[1:]:
        prod = prod * t
    e, r = epsilon(graph), tau(graph)
    rep.checks["product = epsilon tau"] = prod == e * r
    rep.checks["epsilon tau = tau epsilon"] = e * r == r * e
    return rep


def dihedral_relations(graph: GcmGraph) -> RelationReport:
    w, t = omega(graph), tau(graph)
    m = graph.m
    rep = RelationReport()
    rep.checks["tau^2"] = (t * t).is_identity()
    rep.checks[f"omega order {m + 1}"] = w.order() == m + 1
    rep.checks["omega^-1 tau = tau omega"] = w.inverse() * t == t * w
    rep.checks[f"|<tau, omega>| = {2 * (m + 1)}"] = group_order([t, w]) == 2 * (m + 1)
    if graph.num_vertices <= config.MATERIALIZE_CAP:
        rep.checks["automorphisms"] = is_graph_automorphism(graph, t) and is_graph_automorphism(graph, w)
    return rep


def omega_fixed_points(graph: GcmGraph) -> list[int]:
    return omega(graph).fixed_points()


def predicted_omega_fixed_points(graph: GcmGraph) -> list[int]:
    """(g, g^2, ..., g^m) for every g with g^{m+1} = e."""
    G = graph.group
    out = []
    for g in range(graph.n):
        if G.power(g, graph.m + 1) == 0:
            out.append(graph.encode([G.power(g, k) for k in range(1, graph.m + 1)]))
    return sorted(out)


def omega_homomorphism_witness(graph: GcmGraph) -> tuple[int, int] | None:
    """A pair (g, h) with (gh)^omega != g^omega h^omega, or None when omega is multiplicative."""
    w = omega(graph).image
    for g in range(graph.num_vertices):
        for h in range(graph.num_vertices):
            if w[graph.mul(g, h)] != graph.mul(int(w[g]), int(w[h])):
                return g, h
    return None


@dataclass(frozen=True)
class ConjugationCheck:
    g: int
    proof_order: bool  # omega^-1 T_g omega == f_{g1} T_{g^omega}
    statement_order: bool  # omega^-1 T_g omega == T_{g^omega} f_{g1}, both read left to right


def conjugation_identity(graph: GcmGraph, g: int) -> ConjugationCheck:
    """Conjugating a transfer by omega gives a transfer twisted by an inner automorphism."""
    w = omega(graph)
    lhs = w.inverse() * transfer(graph, g) * w
    g_w = int(w.image[g])
    f = conjugation(graph, graph.decode(g)[0])
    t = transfer(graph, g_w)
    return ConjugationCheck(g, lhs == f * t, lhs == t * f)
