import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import digraphs
from dirmincut.generators import erdos
from dirmincut.graph import GraphError, build_graph
from dirmincut.maxflow import reference_s_mincut
from dirmincut.oracles import brute_force_arborescences
from dirmincut.packing import (
    Arborescence,
    NoArborescenceError,
    Packing,
    PackingLimitError,
    _chu_liu_edmonds,
    _chu_liu_edmonds_py,
    crossing_count,
    iteration_bound,
    min_cost_arborescence,
    pack_arborescences,
    sample_arborescences,
    validate_arborescence,
)
from dirmincut.rng import make_rng, split


def _cost(T, cost):
    return sum(cost[e] for e in T.edge_ids())


def test_min_cost_small_example():
    # s->a, s->b, a->b with costs 1, 4, 2
    G = build_graph(3, 0, [(0, 1, 1), (0, 2, 1), (1, 2, 1)])
    T = min_cost_arborescence(G, 0, [1, 4, 2])
    assert sorted(T.edges()) == [(0, 1), (1, 2)]
    assert _cost(T, [1, 4, 2]) == 3


def test_unique_path_arborescence():
    G = build_graph(3, 0, [(0, 1, 1), (1, 2, 1)])
    for cost in ([5, 1], [1, 5]):
        assert sorted(min_cost_arborescence(G, 0, cost).edges()) == [(0, 1), (1, 2)]


def test_unreachable_vertex_rejected():
    with pytest.raises(NoArborescenceError):
        min_cost_arborescence(build_graph(3, 0, [(0, 1, 1)]), 0, [1])


@pytest.mark.parametrize("seed, expected", [(21, 18), (22, 16)])
def test_min_cost_frozen(seed, expected):
    # Reference costs from an independent Edmonds implementation.
    G = erdos(6, 0.6, 10, make_rng(seed))
    cost = [(i * 7) % 11 + 1 for i in range(G.m)]
    T = min_cost_arborescence(G, 0, cost)
    validate_arborescence(T, G)
    assert _cost(T, cost) == expected


def test_matches_enumeration():
    for r in split(make_rng(3), 500):
        G = erdos(int(r.integers(2, 6)), 0.6, 5, r)
        trees = brute_force_arborescences(G, 0)
        if not trees:
            continue
        cost = r.integers(0, 10, size=G.m).astype(float)
        T = min_cost_arborescence(G, 0, cost)
        validate_arborescence(T, G)
        assert _cost(T, cost) == min(_cost(A, cost) for A in trees)


def test_compiled_kernel_matches_reference():
    for r in split(make_rng(4), 300):
        n = int(r.integers(2, 12))
        G = erdos(n, 0.5, 5, r)
        G = build_graph(n, 0, list(G.edges) + [(v - 1, v, 1) for v in range(1, n)])
        cost = r.integers(0, 4, size=G.m).astype(float)
        arcs = [(u, v) for u, v, _ in G.edges]
        assert _chu_liu_edmonds(n, 0, arcs, cost) == _chu_liu_edmonds_py(n, 0, arcs, cost)


def test_validate_rejects_cycle():
    T = Arborescence.from_parents(0, [-1, 2, 1])
    with pytest.raises(GraphError):
        validate_arborescence(T)


def test_validate_rejects_foreign_edge():
    G = build_graph(3, 0, [(0, 1, 1), (1, 2, 1)])
    with pytest.raises(GraphError):
        validate_arborescence(Arborescence.from_parents(0, [-1, 0, 0]), G)


def test_path_packing_gamma():
    G = build_graph(4, 0, [(0, 1, 5), (1, 2, 3), (2, 3, 7)])
    P = pack_arborescences(G, 0, eps=0.1)
    assert len({T.edge_ids() for T in P.arborescences}) == 1
    assert P.exact_gamma_bar() == Fraction(1, 3)


def _random_instance(r):
    while True:
        G = erdos(int(r.integers(3, 8)), float(r.uniform(0.4, 0.9)), 10, r)
        lam = reference_s_mincut(G).value
        if lam > 0:
            return G, lam


def test_duality_sandwich():
    eps = 0.1
    for r in split(make_rng(5), 60):
        G, lam = _random_instance(r)
        P = pack_arborescences(G, 0, eps=eps)
        g = P.exact_gamma_bar()
        assert g <= Fraction(11, 10) / lam
        assert 1 / g >= Fraction(lam) / Fraction(11, 10)
        assert 1 / g <= lam
        loads = P.scaled_loads()
        assert max(loads) == 1
        for T in P.arborescences:
            validate_arborescence(T, G)


def test_gamma_bar_matches_usage():
    G, _ = _random_instance(make_rng(6))
    P = pack_arborescences(G, 0)
    assert math.isclose(P.gamma_bar, float(P.exact_gamma_bar()))
    assert sum(P.usage) == P.iterations * (G.n - 1)


def test_iteration_limit():
    G, _ = _random_instance(make_rng(7))
    with pytest.raises(PackingLimitError):
        pack_arborescences(G, 0, max_iters=1, early_stop=False)
    P = pack_arborescences(G, 0, max_iters=3, early_stop=False, on_limit="truncate")
    assert P.truncated and P.iterations == 3


def test_iteration_bound_formula():
    eps = 0.1
    expected = math.ceil(1.1 * 1.0 * math.log(20) / (0.25 * (1.1 * math.log(1.1) - 0.1)))
    assert iteration_bound(20, eps, 1, 0.25) == expected


def test_sample_edge_cases():
    T = Arborescence.from_parents(0, [-1, 0])
    P = Packing([T], 1, 1.0, [1], [1])
    assert sample_arborescences(P, 0, make_rng(0)) == []
    assert all(S is T for S in sample_arborescences(P, 10, make_rng(0)))


def test_sample_uniform():
    parents = [[-1, 0, 0], [-1, 0, 1], [-1, 2, 0], [-1, 0, 0], [-1, 0, 1]]
    trees = [Arborescence.from_parents(0, p) for p in parents]
    P = Packing(trees, 5, 1.0, [], [])
    draws = sample_arborescences(P, 10000, make_rng(1))
    counts = np.zeros(5)
    for S in draws:
        counts[[i for i, T in enumerate(trees) if T is S][0]] += 1
    sigma = math.sqrt(10000 * 0.2 * 0.8)
    assert np.all(np.abs(counts - 2000) <= 3 * sigma)


def test_crossing_count_examples():
    T = Arborescence.from_parents(0, [-1, 0, 0])
    assert crossing_count(T, {0, 1}) == 1
    assert crossing_count(T, {0, 1, 2}) == 0
    with pytest.raises(GraphError):
        crossing_count(T, {1})


@given(digraphs(n_max=6))
def test_crossing_count_positive_for_proper_sets(G):
    trees = brute_force_arborescences(G, 0)
    for T in trees[:5]:
        for r in range(1, G.n):
            for S in itertools.combinations(range(1, G.n), r - 1):
                assert crossing_count(T, {0, *S}) >= 1
