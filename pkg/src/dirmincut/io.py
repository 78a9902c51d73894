"""Line-oriented text format for edge- and vertex-weighted digraphs.

::

    c free-form comment
    p ec <n> <m>          edge-weighted problem (or ``p vc`` for vertex weights)
    r <root>
    a <tail> <head> <weight>   one per arc; weight omitted for ``p vc``
    w <vertex> <weight>        ``p vc`` only

Ids are 0-based. A missing ``r`` line means root 0.
"""

from __future__ import annotations

from pathlib import Path
from typing import Union

from .graph import (
    GraphError,
    VertexWeightedDigraph,
    WeightedDigraph,
    build_graph,
    build_vertex_graph,
)

AnyGraph = Union[WeightedDigraph, VertexWeightedDigraph]


class FormatError(GraphError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def _ints(tokens: list[str], count: int, lineno: int) -> list[int]:
    if len(tokens) != count:
        raise FormatError(lineno, f"expected {count} integers, got {len(tokens)}")
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(lineno, "non-integer field") from None


def parse_graph(text: str) -> AnyGraph:
    kind = None
    n = m = 0
    root = 0
    arcs: list[list[int]] = []
    weights: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tag, *rest = line.split()
        if tag == "p":
            if kind is not None:
                raise FormatError(lineno, "duplicate problem line")
            if len(rest) != 3 or rest[0] not in ("ec", "vc"):
                raise FormatError(lineno, "problem line must be 'p ec|vc <n> <m>'")
            kind = rest[0]
            n, m = _ints(rest[1:], 2, lineno)
            if n < 1 or m < 0:
                raise FormatError(lineno, "bad problem size")
            continue
        if kind is None:
            raise FormatError(lineno, "data before problem line")
        if tag == "r":
            (root,) = _ints(rest, 1, lineno)
            if not 0 <= root < n:
                raise FormatError(lineno, f"id out of range: {root}")
        elif tag == "a":
            vals = _ints(rest, 3 if kind == "ec" else 2, lineno)
            if not (0 <= vals[0] < n and 0 <= vals[1] < n):
                raise FormatError(lineno, f"id out of range in arc {vals[0]} {vals[1]}")
            if kind == "ec" and vals[2] < 0:
                raise FormatError(lineno, "negative weight")
            arcs.append(vals)
        elif tag == "w" and kind == "vc":
            v, w = _ints(rest, 2, lineno)
            if not 0 <= v < n:
                raise FormatError(lineno, f"id out of range: {v}")
            if w < 0:
                raise FormatError(lineno, "negative weight")
            weights[v] = w
        else:
            raise FormatError(lineno, f"unknown line type {tag!r}")
    if kind is None:
        raise FormatError(0, "missing problem line")
    if len(arcs) != m:
        raise FormatError(0, f"problem line declares {m} arcs, found {len(arcs)}")
    if kind == "ec":
        return build_graph(n, root, arcs)
    return build_vertex_graph(n, root, arcs, [weights.get(v, 0) for v in range(n)])


def serialize_graph(G: AnyGraph, comments: tuple[str, ...] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    if isinstance(G, WeightedDigraph):
        lines.append(f"p ec {G.n} {G.m}")
        lines.append(f"r {G.root}")
        lines.extend(f"a {u} {v} {w}" for u, v, w in G.edges)
    else:
        lines.append(f"p vc {G.n} {G.m}")
        lines.append(f"r {G.root}")
        lines.extend(f"w {v} {w}" for v, w in enumerate(G.vertex_weight))
        lines.extend(f"a {u} {v}" for u, v in G.arcs)
    return "\n".join(lines) + "\n"


def read_graph(path: Union[str, Path]) -> AnyGraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def write_graph(path: Union[str, Path], G: AnyGraph, comments: tuple[str, ...] = ()) -> None:
    Path(path).write_text(serialize_graph(G, comments), encoding="utf-8")
