import math
from collections import Counter

import numpy as np
import pytest
import scipy.sparse
from hypothesis import given, settings, strategies as st

from gcm.errors import NotAbelian, TooLarge
from gcm.graph import build_graph
from gcm.groups import build_group
from gcm.spectral import (Verdict, abelian_spectrum, check_regularity, lambda_min_numeric,
                          lanczos_min, predicted_srg_spectrum, question26_probe)

ABELIAN = [("C2", 2), ("C3", 2), ("C4", 2), ("C2xC2", 2), ("C5", 2), ("C6", 2),
           ("C2", 3), ("C3", 3), ("C4", 3), ("C2xC2", 3), ("C2", 4), ("C3", 4), ("C2", 5)]


def dense_spectrum(graph):
    vals = np.linalg.eigvalsh(graph.adjacency.astype(float))
    return Counter(int(round(v)) for v in vals)


@pytest.mark.parametrize("spec,m", ABELIAN)
def test_character_spectrum_matches_eigvalsh(spec, m):
    G = build_group(spec)
    g = build_graph(G, m)
    exact = abelian_spectrum(G, m)
    assert exact.as_dict() == dict(dense_spectrum(g))
    assert exact.size == g.num_vertices
    assert exact.trace == 0
    assert exact.trace_of_square == g.num_vertices * g.degree
    assert exact.lambda_max == g.degree == math.comb(m + 1, 2) * (G.order - 1)


@pytest.mark.parametrize("n,spec", [(2, "C2"), (3, "C3"), (4, "C4"), (4, "C2xC2"), (5, "C5"), (6, "C6")])
def test_srg_spectrum_formula(n, spec):
    assert abelian_spectrum(build_group(spec), 2).as_dict() == predicted_srg_spectrum(n)


def test_lambda_min_c3_m3():
    assert abelian_spectrum(build_group("C3"), 3).lambda_min == -3
    assert abelian_spectrum(build_group("C3"), 3).to_csv().splitlines()[-1].startswith("-3,")


def test_spectrum_csv():
    assert abelian_spectrum(build_group("C3"), 2).to_csv() == "6,1\n0,6\n-3,2\n"


def test_non_abelian_spectrum_refused():
    with pytest.raises(NotAbelian):
        abelian_spectrum(build_group("S3"), 2)


@pytest.mark.parametrize("spec,m", [("S3", 2), ("C4", 2), ("C2", 3), ("Q8", 2), ("S3", 3), ("D4", 2)])
def test_lanczos_matches_eigvalsh(spec, m):
    g = build_graph(build_group(spec), m)
    est = lambda_min_numeric(g)
    ref = np.linalg.eigvalsh(g.adjacency.astype(float)).min()
    assert abs(est.value - ref) < 1e-8
    lo, hi = est.bracket
    assert lo - 1e-9 <= ref <= hi + 1e-9


@settings(max_examples=25, deadline=None)
@given(st.integers(5, 40), st.integers(0, 2**31 - 1))
def test_lanczos_random_symmetric(n, seed):
    rng = np.random.default_rng(seed)
    M = rng.standard_normal((n, n))
    M = M + M.T
    est = lanczos_min(scipy.sparse.csr_matrix(M), seed=seed % 7)
    assert abs(est.value - np.linalg.eigvalsh(M).min()) < 1e-6


def test_numeric_cap():
    g = build_graph(build_group("S3"), 3)
    with pytest.raises(TooLarge):
        lambda_min_numeric(g, numeric_cap=100)


@pytest.mark.parametrize("spec", ["C3", "C4", "C2xC2", "C5", "C6", "S3", "D4", "Q8"])
def test_strong_regularity(spec):
    G = build_group(spec)
    rep = check_regularity(build_graph(G, 2))
    n = G.order
    assert rep.ok
    assert rep.parameters == (n * n, 3 * (n - 1), n, 6)


def test_k4_has_no_c():
    rep = check_regularity(build_graph(build_group("C2"), 2))
    assert rep.ok
    assert rep.parameters == (4, 3, 2, None)


@pytest.mark.parametrize("spec,m", [("C3", 3), ("S3", 3), ("C2", 4), ("C4", 3), ("Q8", 3)])
def test_edge_regularity(spec, m):
    G = build_group(spec)
    rep = check_regularity(build_graph(G, m))
    assert rep.ok
    assert rep.parameters == (G.order**m, math.comb(m + 1, 2) * (G.order - 1), G.order + 2 * m - 4)


def test_probe_verdicts():
    for spec, m in [("C2", 2), ("C3", 3), ("C4", 4), ("C2xC2", 4)]:
        res = question26_probe(build_group(spec), m)
        assert res.exact
        assert res.verdict is Verdict.STRICTLY_ABOVE
        assert res.trace_space_full
    res = question26_probe(build_group("C4"), 4)
    assert res.lambda_min == -6 and res.to_dict()["bound"] == -10
    res = question26_probe(build_group("S3"), 2)
    assert not res.exact and res.verdict is Verdict.AT_BOUND  # -3 = -C(3,2)
    assert res.lambda_min == -3
