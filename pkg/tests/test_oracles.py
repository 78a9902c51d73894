import pytest

from dirmincut.generators import erdos
from dirmincut.graph import GraphError, build_graph, build_vertex_graph, in_cut_value
from dirmincut.maxflow import reference_s_mincut
from dirmincut.oracles import (
    brute_force_arborescences,
    brute_force_global_mincut,
    brute_force_s_mincut,
    brute_force_vertex_cut,
    brute_force_vertex_st_cut,
    degenerate_vertex_cut,
    tripartition_vertex_cut,
)
from dirmincut.rng import make_rng, split
from dirmincut.verify import random_vertex_instances


def test_single_edge():
    assert brute_force_s_mincut(build_graph(2, 0, [(0, 1, 5)])).value == 5


def test_lexicographic_tie_break():
    # {1}: 3, {2}: 5, {1,2}: 7
    G = build_graph(3, 0, [(0, 1, 3), (1, 2, 1), (0, 2, 4)])
    r = brute_force_s_mincut(G)
    assert r.value == 3 and r.sink_side == {1}
    # two minimizers {1} and {2} of value 1; the smaller set wins
    H = build_graph(3, 0, [(0, 1, 1), (0, 2, 1)])
    assert brute_force_s_mincut(H).sink_side == {1}


def test_size_limit():
    with pytest.raises(GraphError):
        brute_force_s_mincut(build_graph(25, 0, []))


def test_agrees_with_reference():
    for r in split(make_rng(1), 500):
        G = erdos(int(r.integers(2, 8)), float(r.uniform(0.2, 0.8)), 10, r)
        assert brute_force_s_mincut(G).value == reference_s_mincut(G).value


@pytest.mark.parametrize("seed, rooted, glob", [(12, 6, 6), (13, 8, 7)])
def test_frozen_values(seed, rooted, glob):
    # Values from an independent max-flow library.
    G = erdos(7, 0.7, 10, make_rng(seed))
    assert brute_force_s_mincut(G).value == rooted
    g = brute_force_global_mincut(G)
    assert g.value == glob and in_cut_value(G, g.sink_side) == glob


def test_global_two_cycle():
    assert brute_force_global_mincut(build_graph(2, 0, [(0, 1, 5), (1, 0, 3)])).value == 3


def test_vertex_cut_triangle():
    G = build_vertex_graph(3, 0, [(u, v) for u in range(3) for v in range(3) if u != v], [1, 1, 1])
    r = brute_force_vertex_cut(G, 0)
    assert r.degenerate and r.value == 1
    assert brute_force_vertex_cut(G, None).value == 1


def test_vertex_cut_path():
    G = build_vertex_graph(3, 0, [(0, 1), (1, 2)], [9, 4, 7])
    r = brute_force_vertex_cut(G, 0)
    assert r.value == 4 and r.separator == {1} and r.sink_component == {2}


def test_vertex_cut_four_cycle_global():
    G = build_vertex_graph(4, 0, [(v, (v + 1) % 4) for v in range(4)], [1, 1, 1, 1])
    assert brute_force_vertex_cut(G, None).value == 1


def test_vertex_size_limit():
    with pytest.raises(GraphError):
        brute_force_vertex_cut(build_vertex_graph(15, 0, [], [1] * 15))


def test_degenerate_rules():
    G = build_vertex_graph(4, 0, [(0, v) for v in range(1, 4)], [5, 2, 9, 3])
    r = degenerate_vertex_cut(G, 0)
    assert r.sink_component == {2} and r.separator == {1, 3} and r.value == 5
    g = degenerate_vertex_cut(G, None)
    assert g.separator == {1, 3} and g.value == 5


def test_bitmask_and_tripartition_agree():
    for G in random_vertex_instances(200, make_rng(2)):
        for s in (0, None):
            tri = tripartition_vertex_cut(G, s)
            bf = brute_force_vertex_cut(G, s)
            if tri is None:
                assert bf.degenerate
            else:
                assert bf.value == tri


def test_vertex_st_cut_adjacent():
    G = build_vertex_graph(2, 0, [(0, 1)], [1, 1])
    assert brute_force_vertex_st_cut(G, 0, 1) is None


def test_arborescence_enumeration():
    path = build_graph(3, 0, [(0, 1, 1), (1, 2, 1)])
    assert len(brute_force_arborescences(path)) == 1
    two_routes = build_graph(3, 0, [(0, 1, 1), (0, 2, 1), (1, 2, 1), (0, 2, 4)])
    assert len(brute_force_arborescences(two_routes)) == 3
    with pytest.raises(GraphError):
        brute_force_arborescences(build_graph(7, 0, []))
