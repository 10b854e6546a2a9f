import itertools
import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gcm.errors import BadParameters, IdentityElement, IdentityVertex
from gcm.graph import (IntervalElement, build_graph, common_count_with_e, interval_meta_graph,
                       interval_product_in_S, interval_subgraph, predicted_weight3_count,
                       reassemble, weight3_profile, weight_decomposition, windows)
from gcm.groups import build_group


def brute_generating_set(G, m):
    """Interval elements written out coordinate by coordinate, straight from the definition."""
    out = set()
    for x in range(1, G.order):
        for k in range(1, m + 1):
            for l in range(k + 1, m + 2):
                out.add(tuple(x if k <= i < l else 0 for i in range(1, m + 1)))
    return out


def brute_adjacency(G, m):
    S = brute_generating_set(G, m)
    verts = list(itertools.product(range(G.order), repeat=m))
    # vertex index uses g1 as the least significant digit
    idx = {v: sum(c * G.order**i for i, c in enumerate(v)) for v in verts}
    A = np.zeros((len(verts), len(verts)), dtype=bool)
    for u in verts:
        for s in S:
            # u ~ s u, so right multiplications (transfers) preserve edges
            v = tuple(G.mul(b, a) for a, b in zip(u, s))
            A[idx[u], idx[v]] = True
    return A


@pytest.mark.parametrize("spec,m", [("C2", 2), ("C3", 2), ("C4", 2), ("S3", 2), ("C2", 3), ("C3", 3), ("Q8", 2)])
def test_adjacency_matches_definition(spec, m):
    G = build_group(spec)
    g = build_graph(G, m)
    assert np.array_equal(g.adjacency, brute_adjacency(G, m))
    assert len(g.gen_set) == math.comb(m + 1, 2) * (G.order - 1)


def test_small_graph_shapes():
    g = build_graph(build_group("C2"), 2)
    assert g.num_vertices == 4 and set(g.adjacency.sum(axis=1)) == {3}
    g = build_graph(build_group("C3"), 2)
    assert g.num_vertices == 9 and set(g.adjacency.sum(axis=1)) == {6}
    g = build_graph(build_group("C2"), 3)
    comp = ~g.adjacency
    np.fill_diagonal(comp, False)
    # complement of G_3(C2) is a perfect matching
    assert set(comp.sum(axis=1)) == {1}
    assert g.num_edges() == 8 * 6 // 2


def test_adjacent_oracle_matches_matrix():
    g = build_graph(build_group("C4"), 2)
    for u in range(g.num_vertices):
        for v in range(g.num_vertices):
            assert g.adjacent(u, v) == bool(g.adjacency[u, v])


def test_unmaterialized_graph_uses_oracle():
    g = build_graph(build_group("C4"), 9)
    assert not g.materialized
    u = g.encode([0, 1, 1, 2, 2, 2, 3, 0, 0])
    v = g.mul(u, g.interval_vertex(IntervalElement(1, 3, 7)))
    assert g.adjacent(u, v) and g.adjacent(v, u)
    assert not g.adjacent(u, u)


def test_weight_decomposition_examples():
    # a, b, c = x, x^2, x^3 in C4
    g = build_graph(build_group("C4"), 9)
    v = g.encode([0, 1, 1, 2, 2, 2, 3, 0, 0])
    dec = weight_decomposition(g, v)
    assert dec.weight == 3
    assert dec.boundaries == (2, 4, 7, 8)
    assert dec.values == (1, 2, 3)
    w = g.encode([0, 1, 0, 0, 2, 2, 3, 3, 0])
    assert weight_decomposition(g, w).weight == 4
    assert g.weight(w) == 4
    with pytest.raises(IdentityVertex):
        weight_decomposition(g, 0)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["C3", "C4", "S3", "C2xC2"]), st.integers(2, 6), st.data())
def test_decomposition_round_trip(spec, m, data):
    g = build_graph(build_group(spec), m)
    coords = data.draw(st.lists(st.integers(0, g.n - 1), min_size=m, max_size=m))
    v = g.encode(coords)
    if v == 0:
        return
    dec = weight_decomposition(g, v)
    assert reassemble(g, dec) == v
    assert dec.weight == g.weight(v)
    # weight 1 is exactly the generating set
    assert (dec.weight == 1) == g.is_generator(v)


def test_interval_product_rule_exhaustive():
    G = build_group("C4")
    m = 3
    S = brute_generating_set(G, m)
    ivs = [IntervalElement(x, k, l) for x in range(1, 4) for k, l in windows(m)]

    def vec(iv):
        return tuple(iv.x if iv.k <= i < iv.l else 0 for i in range(1, m + 1))

    for h in ivs:
        for g in ivs:
            prod = tuple(G.mul(a, b) for a, b in zip(vec(h), vec(g)))
            assert interval_product_in_S(G, h, g) == (prod in S), (h, g)


@pytest.mark.parametrize("spec", ["C2", "C3", "C4", "C2xC2", "S3", "Q8"])
def test_weight3_table(spec):
    g = build_graph(build_group(spec), 3)
    prof = weight3_profile(g)
    assert prof.ok, prof.mismatches[:5]
    with pytest.raises(BadParameters):
        weight3_profile(build_graph(build_group(spec), 2))


def test_weight3_counts_brute():
    g = build_graph(build_group("C4"), 3)
    A = g.adjacency.astype(int)
    common = A @ A
    for v in np.flatnonzero(g.weights == 3).tolist():
        x, y, z = weight_decomposition(g, v).values
        assert common[0, v] == common_count_with_e(g, v) == predicted_weight3_count(g.group, x, y, z)[0]


@pytest.mark.parametrize("spec,m,size,deg", [("C2", 3, 6, 4), ("C4", 3, 12, 5), ("C4", 4, 20, 7)])
def test_interval_subgraphs(spec, m, size, deg):
    g = build_graph(build_group(spec), m)
    sub = interval_subgraph(g, 1)
    assert len(sub.vertices) == size
    assert sub.is_regular() and sub.degrees[0] == deg
    with pytest.raises(IdentityElement):
        interval_subgraph(g, 0)


def test_meta_graph_complements():
    c2 = interval_meta_graph(2).complement_networkx()
    assert c2.number_of_edges() == 0  # KG(3,2) has no edges; B_2 is a triangle
    c3 = interval_meta_graph(3).complement_networkx()
    assert nx.is_isomorphic(c3, nx.Graph([(0, 1), (2, 3), (4, 5)]))
    c4 = interval_meta_graph(4).complement_networkx()
    assert nx.is_isomorphic(c4, nx.petersen_graph())
    for m in range(2, 7):
        assert interval_meta_graph(m).complement_is_kneser()
    with pytest.raises(BadParameters):
        interval_meta_graph(1)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["C3", "C4", "S3"]), st.integers(2, 4), st.data())
def test_adjacent_weights_differ_by_at_most_two(spec, m, data):
    g = build_graph(build_group(spec), m)
    u = data.draw(st.integers(0, g.num_vertices - 1))
    for v in g.neighbors(u):
        assert abs(g.weight(u) - g.weight(v)) <= 2


def test_right_multiplication_preserves_edges():
    g = build_graph(build_group("S3"), 2)
    A = g.adjacency
    for h in range(g.num_vertices):
        p = np.array([g.mul(v, h) for v in range(g.num_vertices)])
        assert np.array_equal(A[np.ix_(p, p)], A)
