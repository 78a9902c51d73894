import numpy as np
import pytest

from dirmincut.config import DriverConfig, log_count
from dirmincut.generators import clique, cycle, erdos, planted_unbalanced, planted_vertex
from dirmincut.graph import in_cut_value, vertex_in_cut_value
from dirmincut.maxflow import reference_s_mincut
from dirmincut.oracles import brute_force_vertex_cut
from dirmincut.rng import child, make_rng, split


def test_rng_reproducible():
    a = make_rng(7).integers(0, 1 << 30, size=5)
    b = make_rng(7).integers(0, 1 << 30, size=5)
    assert np.array_equal(a, b)


def test_split_streams_differ():
    x, y = split(make_rng(1), 2)
    assert x.integers(1 << 40) != y.integers(1 << 40)
    assert child(make_rng(1)).integers(1 << 40) == split(make_rng(1), 1)[0].integers(1 << 40)


def test_log_count_and_auto_k():
    assert log_count(1) == 2  # n is floored at 2
    assert log_count(100) == 10
    cfg = DriverConfig()
    assert cfg.resolve_k(512, 8000) == 43
    assert DriverConfig(k=5).resolve_k(512, 8000) == 5
    assert cfg.resolve_trees(512) == 13


def test_fixtures():
    assert cycle(4).m == 4 and clique(4).m == 12
    assert erdos(5, 1.0, 3, make_rng(0)).m == 20


def test_planted_unbalanced_is_certified():
    for r in split(make_rng(2), 30):
        G, ans = planted_unbalanced(20, 4, r)
        assert 1 <= len(ans.sink_side) <= 4 and 0 not in ans.sink_side
        assert in_cut_value(G, ans.sink_side) == ans.value == reference_s_mincut(G).value


def test_planted_vertex_is_optimal():
    for r in split(make_rng(3), 30):
        G, ans = planted_vertex(8, r)
        assert vertex_in_cut_value(G, ans.sink_side) == ans.value
        assert brute_force_vertex_cut(G, 0).value == ans.value


def test_answer_text():
    _, ans = planted_vertex(6, make_rng(4))
    text = ans.to_text()
    assert text.startswith(f"value {ans.value}\n") and "separator" in text


def test_generator_rejects_tiny():
    with pytest.raises(ValueError):
        planted_unbalanced(1, 1, make_rng(0))
    with pytest.raises(ValueError):
        planted_vertex(2, make_rng(0))
