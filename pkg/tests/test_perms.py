import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy.combinatorics import Permutation, PermutationGroup

from gcm.perms import PermGroup, VertexPermutation, compose, group_order


def perm_strategy(n):
    return st.permutations(list(range(n))).map(VertexPermutation)


def test_composition_is_left_to_right():
    p = VertexPermutation([1, 2, 0])
    q = VertexPermutation([0, 2, 1])
    # apply p then q
    pq = p * q
    assert [pq(v) for v in range(3)] == [q(p(v)) for v in range(3)]
    assert compose(p, q).image.tolist() == pq.image.tolist()


def test_inverse_and_order():
    p = VertexPermutation([1, 2, 0, 4, 3])
    assert (p * p.inverse()).is_identity()
    assert p.order() == 6
    assert (p**6).is_identity() and not (p**3).is_identity()
    assert (p**-1).image.tolist() == p.inverse().image.tolist()
    assert VertexPermutation.identity(4).fixed_points() == [0, 1, 2, 3]


def test_rejects_non_permutation():
    with pytest.raises(ValueError):
        VertexPermutation([0, 0, 1])


def test_symmetric_and_trivial_orders():
    n = 6
    cyc = VertexPermutation(list(range(1, n)) + [0])
    swap = VertexPermutation([1, 0] + list(range(2, n)))
    assert group_order([cyc, swap]) == 720
    assert group_order([], degree=5) == 1
    G = PermGroup([cyc, swap], n)
    assert G.contains(VertexPermutation([2, 1, 0, 3, 4, 5]))
    assert sorted(G.orbit(0)) == list(range(n))


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 12).flatmap(lambda n: st.lists(perm_strategy(n), min_size=1, max_size=3)))
def test_group_order_vs_sympy(gens):
    n = gens[0].degree
    want = PermutationGroup([Permutation(g.image.tolist()) for g in gens]).order()
    G = PermGroup(gens, n)
    assert G.order() == want
    for g in gens:
        assert G.contains(g)
    assert int(np.prod(G.orbit_lengths)) == want
