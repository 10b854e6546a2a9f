import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from networkx.algorithms.isomorphism import GraphMatcher

from gcm.canon import automorphism_search, canonical_form, find_isomorphism
from gcm.errors import TooLarge


def vf2_aut_count(adj):
    g = nx.from_numpy_array(adj.astype(int))
    return sum(1 for _ in GraphMatcher(g, g).isomorphisms_iter())


@st.composite
def random_graphs(draw):
    n = draw(st.integers(1, 9))
    p = draw(st.sampled_from([0.2, 0.5, 0.8]))
    seed = draw(st.integers(0, 2**31 - 1))
    rng = np.random.default_rng(seed)
    upper = np.triu(rng.random((n, n)) < p, 1)
    return upper | upper.T, seed


@settings(max_examples=120, deadline=None)
@given(random_graphs())
def test_order_matches_vf2(case):
    adj, _ = case
    res = automorphism_search(adj)
    assert res.order == vf2_aut_count(adj)
    for g in res.generators:
        assert np.array_equal(adj[np.ix_(g, g)], adj)


@settings(max_examples=80, deadline=None)
@given(random_graphs())
def test_form_is_labelling_invariant(case):
    adj, seed = case
    perm = np.random.default_rng(seed + 1).permutation(adj.shape[0])
    other = adj[np.ix_(perm, perm)]
    assert canonical_form(adj).same_as(canonical_form(other))
    F = find_isomorphism(adj, other)
    assert F is not None
    assert np.array_equal(adj, other[np.ix_(F, F)])


@pytest.mark.parametrize("g,order", [
    (nx.petersen_graph(), 120), (nx.cubical_graph(), 48), (nx.heawood_graph(), 336),
    (nx.dodecahedral_graph(), 120), (nx.complete_graph(5), 120),
    (nx.complete_bipartite_graph(3, 3), 72), (nx.cycle_graph(7), 14),
])
def test_classic_graphs(g, order):
    assert automorphism_search(nx.to_numpy_array(g)).order == order


def test_rook_graph():
    # the 4x4 rook's graph has 2 (4!)^2 automorphisms
    rook = nx.cartesian_product(nx.complete_graph(4), nx.complete_graph(4))
    assert automorphism_search(nx.to_numpy_array(rook)).order == 2 * math.factorial(4) ** 2


def test_non_isomorphic_pairs():
    a = nx.to_numpy_array(nx.cycle_graph(6))
    b = nx.to_numpy_array(nx.disjoint_union(nx.cycle_graph(3), nx.cycle_graph(3)))
    assert find_isomorphism(a, b) is None
    assert find_isomorphism(a, nx.to_numpy_array(nx.path_graph(6))) is None
    assert find_isomorphism(a, np.zeros((5, 5))) is None


def test_ir_cap():
    with pytest.raises(TooLarge):
        automorphism_search(np.zeros((30, 30), dtype=bool), ir_cap=10)
