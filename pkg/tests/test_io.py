import pytest
from hypothesis import given

from conftest import digraphs, vertex_digraphs
from dirmincut.graph import build_graph
from dirmincut.io import FormatError, parse_graph, read_graph, serialize_graph, write_graph


def test_parse_minimal():
    G = parse_graph("p ec 2 1\nr 0\na 0 1 5")
    assert G.n == 2 and G.root == 0 and G.edges == ((0, 1, 5),)


def test_missing_root_line_defaults_to_zero():
    assert parse_graph("c hi\np ec 3 1\na 1 2 4\n").root == 0


def test_parse_vertex_graph():
    G = parse_graph("p vc 3 2\nr 1\nw 0 4\nw 2 7\na 1 0\na 0 2\n")
    assert G.vertex_weight == (4, 0, 7)
    assert G.root == 1 and G.m == 2


@pytest.mark.parametrize(
    "text, lineno",
    [
        ("p ec 2 1\na 0 5 1\n", 2),
        ("p ec 2 1\np ec 2 1\na 0 1 1\n", 2),
        ("a 0 1 1\np ec 2 1\n", 1),
        ("p ec 2 1\na 0 x 1\n", 2),
        ("p ec 2 1\nq 1\na 0 1 1\n", 2),
        ("p ec 2 1\nr 3\na 0 1 1\n", 2),
        ("p ec 2 1\na 0 1 -1\n", 2),
        ("p xx 2 1\n", 1),
    ],
)
def test_format_errors(text, lineno):
    with pytest.raises(FormatError) as e:
        parse_graph(text)
    assert e.value.lineno == lineno


def test_arc_count_mismatch():
    with pytest.raises(FormatError):
        parse_graph("p ec 2 2\na 0 1 1\n")


def test_missing_problem_line():
    with pytest.raises(FormatError):
        parse_graph("c only a comment\n")


@given(digraphs())
def test_round_trip_edge(G):
    assert parse_graph(serialize_graph(G)) == G


@given(vertex_digraphs())
def test_round_trip_vertex(G):
    assert parse_graph(serialize_graph(G)) == G


def test_file_round_trip(tmp_path):
    G = build_graph(3, 2, [(0, 1, 1), (2, 0, 4)])
    path = tmp_path / "g.txt"
    write_graph(path, G, comments=("fixture",))
    assert path.read_text().startswith("c fixture\n")
    assert read_graph(path) == G
