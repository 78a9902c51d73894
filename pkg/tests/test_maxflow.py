import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import digraphs
from dirmincut.graph import GraphError, build_graph, in_cut_value, out_cut_value
from dirmincut.maxflow import (
    INF,
    FlowResult,
    NotMaximalError,
    call_count,
    max_flow,
    min_cut_sink_side,
    reference_s_mincut,
)
from dirmincut.oracles import brute_force_s_mincut

# s=0, a=1, t=2
TRIANGLE = build_graph(3, 0, [(0, 1, 3), (1, 2, 2), (0, 2, 1)])


def test_triangle_value_and_sink_side():
    f = max_flow(TRIANGLE, 0, 2)
    assert f.value == 3
    assert min_cut_sink_side(TRIANGLE, f) == {2}


def test_no_path():
    assert max_flow(build_graph(3, 0, [(0, 1, 4)]), 0, 2).value == 0


def test_single_edge():
    G = build_graph(2, 0, [(0, 1, 5)])
    f = max_flow(G, 0, 1)
    assert f.value == 5
    assert min_cut_sink_side(G, f) == {1}


def test_source_equals_sink():
    with pytest.raises(GraphError):
        max_flow(TRIANGLE, 1, 1)


def test_inf_sentinel():
    assert INF == 1 << 62


def test_non_maximal_flow_detected():
    f = FlowResult(0, (0, 0, 0), 0, 2)
    with pytest.raises(NotMaximalError):
        min_cut_sink_side(TRIANGLE, f)


def test_counter_increments():
    before = call_count()
    max_flow(TRIANGLE, 0, 2)
    assert call_count() == before + 1


def test_reference_example():
    # s->a:3, a->b:1, s->b:4: sink sets {a}: 3, {b}: 5, {a,b}: 7
    G = build_graph(3, 0, [(0, 1, 3), (1, 2, 1), (0, 2, 4)])
    r = reference_s_mincut(G)
    assert r.value == 3 and r.sink_side == {1}
    assert in_cut_value(G, {1, 2}) == 7


def test_reference_needs_two_vertices():
    with pytest.raises(GraphError):
        reference_s_mincut(build_graph(1, 0, []))


@given(digraphs(n_max=7), st.data())
def test_flow_is_feasible_and_matches_cut(G, data):
    t = data.draw(st.integers(1, G.n - 1))
    f = max_flow(G, 0, t)
    net = [0] * G.n
    for (u, v, w), x in zip(G.edges, f.flow):
        assert 0 <= x <= w
        net[u] -= x
        net[v] += x
    assert all(net[v] == 0 for v in range(G.n) if v not in (0, t))
    assert net[t] == f.value == -net[0]
    T = min_cut_sink_side(G, f)
    assert t in T and 0 not in T
    assert in_cut_value(G, T) == f.value
    assert out_cut_value(G, set(range(G.n)) - T) == f.value


@given(digraphs(n_max=7))
def test_reference_matches_brute_force(G):
    assert reference_s_mincut(G).value == brute_force_s_mincut(G).value
