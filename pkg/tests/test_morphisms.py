import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from networkx.algorithms.isomorphism import GraphMatcher

from gcm.errors import (BadParameters, ExceptionalCase, IndexOutOfRange, NotAbelian,
                        NotAnAutomorphism, NotAnIsomorphism, PreconditionFailed, TooLarge)
from gcm.graph import build_graph
from gcm.groups import GroupMap, automorphism_group, build_group, groups_isomorphic
from gcm.morphisms import (NotHomogeneous, assemble_full_aut, canonical_aut_order, conjugation,
                           conjugation_identity, dihedral_relations, edge_failure, epsilon,
                           extract_group_iso, gamma, gamma_relations, graphs_isomorphic,
                           homogeneous_aut, homogeneous_map, is_graph_automorphism, omega,
                           omega_fixed_points, omega_homomorphism_witness, predicted_aut_order,
                           predicted_omega_fixed_points, tau, tau_i, tau_product_holds, transfer,
                           transfer_generators, verify_proposition_42)
from gcm.perms import VertexPermutation, group_order


def graph(spec, m):
    return build_graph(build_group(spec), m)


def test_transfer_identity_and_fixed_point_free():
    g = graph("C3", 2)
    assert transfer(g, 0).is_identity()
    for v in range(1, g.num_vertices):
        t = transfer(g, v)
        assert is_graph_automorphism(g, t)
        assert t.fixed_points() == []


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([("S3", 2), ("C4", 2), ("Q8", 2), ("C3", 3)]), st.data())
def test_transfer_composition(case, data):
    g = graph(*case)
    a = data.draw(st.integers(0, g.num_vertices - 1))
    b = data.draw(st.integers(0, g.num_vertices - 1))
    # x T_a T_b = x a b
    assert transfer(g, a) * transfer(g, b) == transfer(g, g.mul(a, b))


def test_homogeneous_automorphisms():
    g = graph("C4", 2)
    inv = GroupMap(g.group, g.group, (0, 3, 2, 1))
    p = homogeneous_aut(g, inv)
    assert p.order() == 2 and is_graph_automorphism(g, p)
    ident = GroupMap(g.group, g.group, (0, 1, 2, 3))
    assert homogeneous_aut(g, ident).is_identity()
    with pytest.raises(NotAnAutomorphism):
        homogeneous_aut(g, GroupMap(g.group, g.group, (0, 2, 1, 3)))


@pytest.mark.parametrize("spec,m", [("S3", 2), ("C4", 2), ("Q8", 2), ("C2xC2", 3)])
def test_conjugating_a_transfer_by_a_homogeneous_map(spec, m):
    g = graph(spec, m)
    rng = np.random.default_rng(1)
    for f in automorphism_group(g.group):
        F = homogeneous_aut(g, f)
        for x in rng.integers(0, g.num_vertices, 5).tolist():
            gf = g.encode([f(c) for c in g.decode(x)])
            assert F.inverse() * transfer(g, x) * F == transfer(g, gf)


def test_gamma_relations_and_orders():
    g = graph("C3", 2)
    g1, g2 = gamma(g, 1), gamma(g, 2)
    assert (g1 * g1).is_identity() and (g2 * g2).is_identity()
    assert ((g1 * g2) ** 3).is_identity()
    assert group_order([g1, g2]) == 6
    assert group_order([gamma(graph("C2", 4), i) for i in range(1, 5)]) == 120
    for spec, m in [("C3", 2), ("C4", 3), ("C2", 4), ("C5", 2), ("C2xC2", 3)]:
        assert gamma_relations(graph(spec, m)).ok
    with pytest.raises(IndexOutOfRange):
        gamma(g, 3)
    with pytest.raises(IndexOutOfRange):
        gamma(g, 0)


def test_gamma_not_automorphism_for_non_abelian():
    g = graph("S3", 2)
    g1 = gamma(g, 1)
    assert not is_graph_automorphism(g, g1)
    assert edge_failure(g, g1) is not None
    assert edge_failure(g, tau(g)) is None


def test_dihedral_part():
    for spec in ["C2", "C3", "S3", "Q8"]:
        g = graph(spec, 3)
        w, t = omega(g), tau(g)
        assert (w**4).is_identity() and (t * t).is_identity()
        assert group_order([t, w]) == 8
        assert dihedral_relations(g).ok
    g = graph("S3", 2)
    assert group_order([tau(g), omega(g)]) == 6


def test_omega_fixed_points():
    g = graph("S3", 2)
    fixed = omega_fixed_points(g)
    assert len(fixed) == 3
    assert fixed == predicted_omega_fixed_points(g)
    # gcd(m+1, |G|) = 1 leaves only the identity
    assert omega_fixed_points(graph("C4", 2)) == [0]
    assert omega_homomorphism_witness(g) is not None
    assert omega_homomorphism_witness(graph("C4", 2)) is None


def test_omega_conjugation_order():
    g = graph("S3", 2)
    rng = np.random.default_rng(3)
    checks = [conjugation_identity(g, int(v)) for v in rng.integers(0, g.num_vertices, 20)]
    assert all(c.proof_order for c in checks)
    # read left to right, the other order is not an identity for S3
    assert not all(conjugation_identity(g, v).statement_order for v in range(g.num_vertices))
    assert conjugation(g, 0).is_identity()


@pytest.mark.parametrize("spec,m", [("C3", 3), ("C4", 4), ("C2", 3), ("C5", 3), ("C3", 5), ("C2", 4)])
def test_tau_product(spec, m):
    assert tau_product_holds(graph(spec, m)).ok


def test_tau_i_exponent_two():
    g = graph("C2", 3)
    assert epsilon(g).is_identity()
    ts = tau_i(g)
    prod = ts[0]
    for t in ts[1:]:
        prod = prod * t
    assert prod == tau(g)
    with pytest.raises(NotAbelian):
        tau_i(graph("S3", 2))


@pytest.mark.parametrize("spec,m", [("C4", 2), ("S3", 2), ("C3", 3), ("Q8", 2), ("C2xC2", 3)])
def test_named_permutations_are_automorphisms(spec, m):
    g = graph(spec, m)
    perms = transfer_generators(g) + [tau(g), omega(g)]
    perms += [homogeneous_aut(g, f) for f in automorphism_group(g.group)]
    if g.group.is_abelian:
        perms += [gamma(g, i) for i in range(1, m + 1)] + tau_i(g) + [epsilon(g)]
    for p in perms:
        assert is_graph_automorphism(g, p), p.label


def test_random_transposition_is_not_automorphism():
    g = graph("C4", 2)
    img = np.arange(16)
    img[[0, 5]] = img[[5, 0]]
    assert not is_graph_automorphism(g, VertexPermutation(img))
    assert is_graph_automorphism(g, VertexPermutation.identity(16))
    with pytest.raises(TooLarge):
        is_graph_automorphism(g, VertexPermutation.identity(16), cap=10)


@pytest.mark.parametrize("spec,m,order", [("C4", 2, 192), ("S3", 2, 1296), ("C3", 3, 1296),
                                          ("Q8", 2, 9216), ("C5", 2, 600), ("C2", 4, 1920)])
def test_predicted_generated_and_canonical_orders(spec, m, order):
    G = build_group(spec)
    g = build_graph(G, m)
    pred = predicted_aut_order(G, m)
    assert pred.order == order and not pred.exceptional
    assert assemble_full_aut(G, m, g).order() == order
    assert canonical_aut_order(g) == order


def test_exceptional_cases():
    assert predicted_aut_order(build_group("C2"), 3).order == 384
    assert predicted_aut_order(build_group("C3"), 2).order == 1296
    assert predicted_aut_order(build_group("C2xC2"), 3).order is None
    assert canonical_aut_order(graph("C2", 3)) == 384
    assert canonical_aut_order(graph("C3", 2)) == 1296
    with pytest.raises(ExceptionalCase):
        assemble_full_aut(build_group("C2"), 3)
    with pytest.raises(BadParameters):
        predicted_aut_order(build_group("C2"), 1)


def test_klein_four_m2_has_extra_automorphisms():
    # 𝒢₂(C2xC2) is SRG(16,9,4,6); its complement is the 4x4 rook's graph.
    g = graph("C2xC2", 2)
    comp = ~g.adjacency
    np.fill_diagonal(comp, False)
    rook = nx.cartesian_product(nx.complete_graph(4), nx.complete_graph(4))
    assert nx.is_isomorphic(nx.from_numpy_array(comp.astype(int)), rook)
    vf2 = sum(1 for _ in GraphMatcher(nx.from_numpy_array(g.adjacency.astype(int)),
                                      nx.from_numpy_array(g.adjacency.astype(int))).isomorphisms_iter())
    assert canonical_aut_order(g) == vf2 == 1152
    assert assemble_full_aut(g.group, 2, g).order() == 576
    assert predicted_aut_order(g.group, 2).order == 576


@pytest.mark.parametrize("a,b,want", [("C6", "C2xC3", True), ("C4", "C2xC2", False), ("C6", "S3", False),
                                      ("D4", "Q8", False), ("C4xC2", "D4", False), ("S3", "D3", True)])
def test_graph_iso_matches_group_iso(a, b, want):
    G, H = build_group(a), build_group(b)
    assert graphs_isomorphic(build_graph(G, 2), build_graph(H, 2)) is want
    assert (groups_isomorphic(G, H) is not None) is want


def test_extract_group_iso():
    A, B = build_group("C6"), build_group("C2xC3")
    f = groups_isomorphic(A, B)
    ga, gb = build_graph(A, 2), build_graph(B, 2)
    got = extract_group_iso(ga, gb, homogeneous_map(ga, gb, f))
    assert got and got.image == f.image
    g4 = graph("C4", 2)
    ident = extract_group_iso(g4, g4, VertexPermutation.identity(16))
    assert ident and ident.is_identity()
    # a transfer moves e, so it is not homogeneous
    res = extract_group_iso(g4, g4, transfer(g4, 1))
    assert isinstance(res, NotHomogeneous) and not res
    with pytest.raises(NotAnIsomorphism):
        img = np.arange(16)
        img[[0, 5]] = img[[5, 0]]
        extract_group_iso(g4, g4, img)


def test_swap_is_not_homogeneous():
    from gcm.cliques import example_4_10_swap
    g = graph("C3", 2)
    res = extract_group_iso(g, g, example_4_10_swap(g))
    assert isinstance(res, NotHomogeneous)


def test_neighbourhoods_with_equal_involution_counts():
    assert verify_proposition_42(build_group("C4"), build_group("C4"), 3)
    assert verify_proposition_42(build_group("C6"), build_group("C6"), 3)
    assert verify_proposition_42(build_group("C6"), build_group("C2xC3"), 2)
    for a, b in [("C6", "S3"), ("C8", "C4xC2"), ("C4xC2", "D4"), ("C2xC2xC2", "D4"), ("C4", "C5")]:
        with pytest.raises(PreconditionFailed):
            verify_proposition_42(build_group(a), build_group(b), 2)


def test_orders_of_named_subgroups():
    g = graph("C4", 2)
    assert group_order(transfer_generators(g)) == 16
    assert math.prod(assemble_full_aut(g.group, 2, g).orbit_lengths) == 192
