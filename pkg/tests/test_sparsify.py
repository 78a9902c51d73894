import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import digraphs
from dirmincut.config import SparsifyConstants
from dirmincut.generators import erdos, planted_unbalanced
from dirmincut.graph import GraphError, build_graph, in_cut_value
from dirmincut.maxflow import reference_s_mincut
from dirmincut.oracles import all_in_cut_values
from dirmincut.rng import make_rng, split
from dirmincut.sparsify import (
    binomial_alpha,
    binomial_sparsify,
    contract_high_indegree,
    partial_sparsify,
    randomized_round,
    rounding_tau,
    skeleton_sparsify,
    star_units,
    structural_violations,
)
from dirmincut.verify import binomial_expectation_trial, rounding_unbiasedness_trial

LOOSE = SparsifyConstants(c_tau=1.0)


def test_tau_divides_lambda():
    for lam in (1, 7, 64, 1000, 4096, 9973):
        tau = rounding_tau(50, lam, 1, 0.5, LOOSE)
        assert tau >= 1 and lam % tau == 0


def test_tau_floor_at_one():
    assert rounding_tau(100, 10, 5, 0.1) == 1


def test_rounding_identity_on_grid():
    # tau = 16 with these constants: floor(0.25 * 1024 / ln 4) = 184, largest divisor of 1024 below is 128
    G = build_graph(4, 0, [(0, 1, 256), (1, 2, 512), (2, 3, 128), (3, 1, 384)])
    tau = rounding_tau(G.n, 1024, 1, 0.5, LOOSE)
    assert tau == 128
    H, t = skeleton_sparsify(G, 0, 1024, 1, 0.5, make_rng(0), LOOSE)
    star = star_units(1024, 1, 0.5, tau)
    assert star == 2
    expected = sorted([(u, v, w // tau) for u, v, w in G.edges] + [(0, v, star) for v in (1, 2, 3)])
    assert sorted(H.edges) == expected


def test_randomized_round_stays_on_neighbouring_multiples():
    w = np.arange(0, 200, dtype=np.int64)
    out = randomized_round(w, 16, make_rng(3))
    assert np.all(out % 16 == 0)
    assert np.all(np.abs(out - w) < 16)


def test_rounding_unbiased():
    rep = rounding_unbiasedness_trial([37, 101, 250, 513], 16, 10000, make_rng(5))
    assert rep.successes == rep.trials


def test_skeleton_rejects_bad_eps():
    G = build_graph(2, 0, [(0, 1, 1)])
    with pytest.raises(GraphError):
        skeleton_sparsify(G, 0, 1, 1, 1.5, make_rng(0))
    with pytest.raises(GraphError):
        skeleton_sparsify(G, 0, 0, 1, 0.5, make_rng(0))


def test_outputs_integral_and_positive():
    for r in split(make_rng(8), 100):
        G = erdos(int(r.integers(3, 10)), 0.5, 10**4, r)
        H, _ = skeleton_sparsify(G, 0, int(r.integers(1, 10**4)), 1, 0.3, r, LOOSE)
        assert all(isinstance(w, int) and w >= 1 for _, _, w in H.edges)


def test_contract_threshold_above_max_indegree():
    G = erdos(6, 0.5, 5, make_rng(1))
    H, vm = contract_high_indegree(G, 0, G.n + 1)
    assert vm == tuple(range(G.n))


def test_contract_star_into_vertex():
    # 1, 2 -> 3 gives vertex 3 in-degree 2; its out-edge 3 -> 4 now leaves the root.
    G = build_graph(5, 0, [(0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, 1), (3, 4, 5)])
    H, vm = contract_high_indegree(G, 0, 2)
    assert vm == (0, 1, 2, 0, 3)
    assert sorted(H.edges) == [(0, 1, 1), (0, 2, 1), (0, 3, 5)]


@given(digraphs(n_max=8, max_edges=30), st.integers(1, 4))
def test_contract_edge_count_bound(G, threshold):
    H, _ = contract_high_indegree(G, 0, threshold)
    assert H.m <= H.n * threshold
    assert all(H.in_degree(v) < threshold for v in range(H.n) if v != H.root)


def test_binomial_fast_path_is_identity():
    G = erdos(6, 0.5, 5, make_rng(2))
    sp = binomial_sparsify(G, 0, 4, 2, 0.3, make_rng(0))
    assert sp.scale == 1 and sp.params["p"] == 1
    low = [v for v in range(G.n) if v and G.in_degree(v) <= 6]
    assert all(sp.vertex_map[v] != 0 for v in low)


def test_binomial_p_one_preserves_cuts():
    G = erdos(6, 0.6, 9, make_rng(4))
    sp = binomial_sparsify(G, 0, 3, 3, 0.3, make_rng(0))
    assert sp.params["p"] == 1 and sp.params["alpha"] == 0
    H = sp.graph
    for T in ({1}, {2, 3}, {1, 4, 5}):
        assert in_cut_value(H, {sp.vertex_map[v] for v in T}) == in_cut_value(G, T)


def test_binomial_mean():
    G = build_graph(4, 0, [(0, 1, 300), (2, 1, 500), (3, 2, 250), (0, 3, 80)])
    rep = binomial_expectation_trial(G, [1, 2], Fraction(1, 4), 10000, make_rng(6))
    assert rep.successes == 1


def test_binomial_star_and_cap():
    G = erdos(8, 0.9, 50, make_rng(7))
    sp = binomial_sparsify(G, 0, 1000, 2, 0.4, make_rng(1))
    assert sp.params["p"] == Fraction(2, 1000)
    assert sp.params["alpha"] == binomial_alpha(8, 0.4) == math.ceil(6 * math.log(8) / 0.04)
    assert sp.scale == 500
    assert not structural_violations(sp)


def test_partial_rejects_unknown_variant():
    with pytest.raises(GraphError):
        partial_sparsify(build_graph(2, 0, [(0, 1, 1)]), 0, 1, 1, 0.5, make_rng(0), "bogus")


def test_structural_properties_random():
    loose = SparsifyConstants(c_delta=0.5)
    for r in split(make_rng(9), 200):
        G = erdos(int(r.integers(3, 10)), float(r.uniform(0.3, 0.9)), 30, r)
        for variant in ("rounding", "binomial"):
            sp = partial_sparsify(G, 0, 1 << int(r.integers(0, 8)), 2, 0.3, r, variant, loose)
            assert structural_violations(sp) == []


def test_sparsified_mincut_scaled_down():
    eps, k = 0.3, 1
    c = 2 / LOOSE.c_tau
    for r in split(make_rng(10), 20):
        G = erdos(8, 0.7, 10**5, r)
        lam = reference_s_mincut(G).value
        guess = 1 << max(0, (lam - 1).bit_length())
        sp = partial_sparsify(G, 0, guess, k, eps, r, "rounding", LOOSE)
        lam0 = reference_s_mincut(sp.graph).value
        assert lam0 <= (1 + eps) * k * (c / eps**2) * math.log(G.n)


def test_planted_sink_side_survives():
    survived = 0
    for r in split(make_rng(11), 200):
        a, b = split(r, 2)
        G, ans = planted_unbalanced(40, 3, a, certify=False)
        guess = 1 << max(0, (ans.value - 1).bit_length())
        sp = partial_sparsify(G, 0, guess, 3, 0.3, b, "binomial")
        survived += all(sp.vertex_map[v] != sp.graph.root for v in ans.sink_side)
    assert survived >= 190


def test_binomial_lower_bound_on_cuts():
    # Every sink set keeps at least (1 - eps) p lambda after sampling plus star.
    G = build_graph(5, 0, [(u, v, 400) for u in range(5) for v in range(5) if u != v])
    lam = int(all_in_cut_values(G, 0)[1].min())
    for r in split(make_rng(12), 50):
        sp = binomial_sparsify(G, 0, 1600, 4, 0.3, r)
        H = sp.graph
        vals = all_in_cut_values(H, 0)[1]
        assert vals.min() >= (1 - 0.3) * float(sp.params["p"]) * lam
