import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from dirmincut.graph import build_graph, build_vertex_graph

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def digraphs(draw, n_min=2, n_max=6, max_weight=10, max_edges=20):
    n = draw(st.integers(n_min, n_max))
    edges = draw(
        st.lists(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.integers(0, max_weight)),
            max_size=max_edges,
        )
    )
    return build_graph(n, 0, edges)


@st.composite
def vertex_digraphs(draw, n_min=2, n_max=6, max_weight=10):
    n = draw(st.integers(n_min, n_max))
    arcs = draw(
        st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=3 * n)
    )
    weights = draw(st.lists(st.integers(0, max_weight), min_size=n, max_size=n))
    return build_vertex_graph(n, 0, arcs, weights)


@st.composite
def sink_sets(draw, n):
    """Nonempty subsets of 1..n-1 (root 0 excluded)."""
    return frozenset(draw(st.sets(st.integers(1, n - 1), min_size=1)))


@pytest.fixture
def rng():
    from dirmincut.rng import make_rng

    return make_rng(1234)
