import networkx as nx
import numpy as np
import pytest

from gcm.cliques import (classify_clique, clique_number, dispersed_clique, example_4_10_swap,
                         interval_clique, is_triangle_exception, max_cliques_through_e,
                         neighbor_graph, predicted_clique_number)
from gcm.errors import NotAClique, TooLarge
from gcm.graph import build_graph
from gcm.groups import build_group
from gcm.morphisms import is_graph_automorphism


def nx_graph(g):
    return nx.from_numpy_array(g.adjacency.astype(int))


@pytest.mark.parametrize("spec,m", [("C2", 2), ("C3", 2), ("C4", 2), ("C2", 3), ("C3", 3), ("S3", 2),
                                    ("C2", 4), ("C3", 4), ("C5", 2), ("Q8", 2), ("C4", 3)])
def test_clique_number_vs_networkx(spec, m):
    g = build_graph(build_group(spec), m)
    omega = max(len(c) for c in nx.find_cliques(nx_graph(g)))
    assert clique_number(g) == omega == predicted_clique_number(m, g.n)


def test_every_maximum_clique_through_e_found():
    g = build_graph(build_group("C3"), 3)
    size = clique_number(g)
    want = sorted(tuple(sorted(c)) for c in nx.find_cliques(nx_graph(g)) if len(c) == size and 0 in c)
    got = [r.vertices for r in max_cliques_through_e(g)]
    assert got == want


def test_k4():
    g = build_graph(build_group("C2"), 2)
    recs = max_cliques_through_e(g)
    assert len(recs) == 1 and len(recs[0]) == 4


def test_dispersed_cliques_c3_m4():
    g = build_graph(build_group("C3"), 4)
    recs = max_cliques_through_e(g)
    assert len(recs[0]) == 5
    kinds = {r.type.kind for r in recs}
    assert "Dispersed" in kinds and "MixedInvalid" not in kinds
    # |G| = 3 < m + 1 = 5, so no interval clique is maximum
    assert "Interval" not in kinds


def test_interval_cliques_when_group_is_large():
    g = build_graph(build_group("C5"), 2)
    recs = max_cliques_through_e(g)
    assert {r.type.kind for r in recs} == {"Interval"}
    assert len(recs) == 3


def test_classification_helpers():
    g = build_graph(build_group("C4"), 3)
    t = classify_clique(g, dispersed_clique(g, 1, 2))
    assert t.kind == "Dispersed" and t.params == (1, 2)
    t = classify_clique(g, interval_clique(g, 1, 3))
    assert t.kind == "Interval" and t.params == (1, 3)
    with pytest.raises(NotAClique):
        classify_clique(g, [0, g.encode([1, 0, 0]), g.encode([0, 0, 1])])
    with pytest.raises(NotAClique):
        classify_clique(g, [g.encode([1, 0, 0])])


def test_triangle_exception_order_two():
    g = build_graph(build_group("C4"), 3)
    x = 2  # order 2
    tri = [0, g.encode([x, 0, 0]), g.encode([x, x, 0]), g.encode([0, x, 0])]
    assert is_triangle_exception(g, tri)
    assert classify_clique(g, tri).kind == "DispersedOther"
    tri1 = [0, g.encode([1, 0, 0]), g.encode([1, 1, 0]), g.encode([0, 1, 0])]
    assert not is_triangle_exception(g, tri1)


def test_neighbor_graph_degrees():
    g = build_graph(build_group("C4"), 3)
    ivl = neighbor_graph(g, interval_clique(g, 1, 3))
    assert ivl.is_regular() and ivl.degrees[0] == 4
    disp = neighbor_graph(g, dispersed_clique(g, 1, 2))
    assert set(disp.degrees) <= {3, 4, 5}
    disp2 = neighbor_graph(g, dispersed_clique(g, 2, 2))
    assert set(disp2.degrees) <= {2, 3}


def test_c3_swap_is_automorphism():
    g = build_graph(build_group("C3"), 2)
    p = example_4_10_swap(g)
    assert is_graph_automorphism(g, p)
    A = g.adjacency
    assert np.array_equal(A[np.ix_(p, p)], A)
    with pytest.raises(ValueError):
        example_4_10_swap(build_graph(build_group("C4"), 2))


def test_clique_cap():
    g = build_graph(build_group("C3"), 4)
    with pytest.raises(TooLarge):
        max_cliques_through_e(g, cap=10)
