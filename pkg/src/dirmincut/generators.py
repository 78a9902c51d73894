"""Instance generators, some with a certified planted answer."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import (
    VertexWeightedDigraph,
    WeightedDigraph,
    build_graph,
    build_vertex_graph,
    in_cut_value,
    vertex_in_cut_value,
)
from .maxflow import reference_s_mincut

MODELS = ("erdos", "planted-unbalanced", "planted-vertex", "cycle", "clique")


@dataclass(frozen=True)
class PlantedAnswer:
    value: int
    sink_side: frozenset[int]
    separator: frozenset[int] = frozenset()

    def to_text(self) -> str:
        lines = [f"value {self.value}", "sink " + " ".join(map(str, sorted(self.sink_side)))]
        if self.separator:
            lines.append("separator " + " ".join(map(str, sorted(self.separator))))
        return "\n".join(lines) + "\n"


def erdos(n: int, p: float, max_weight: int, rng: np.random.Generator, root: int = 0) -> WeightedDigraph:
    mask = rng.random((n, n)) < p
    w = rng.integers(1, max_weight + 1, size=(n, n))
    edges = [(u, v, int(w[u, v])) for u in range(n) for v in range(n) if u != v and mask[u, v]]
    return build_graph(n, root, edges)


def cycle(n: int, weight: int = 1) -> WeightedDigraph:
    return build_graph(n, 0, [(v, (v + 1) % n, weight) for v in range(n)])


def clique(n: int, weight: int = 1) -> WeightedDigraph:
    return build_graph(n, 0, [(u, v, weight) for u in range(n) for v in range(n) if u != v])


def _bicycle(order: list[int], weight: int) -> list[tuple[int, int, int]]:
    if len(order) < 2:
        return []
    out = []
    for a, b in zip(order, order[1:] + order[:1]):
        out.append((a, b, weight))
        out.append((b, a, weight))
    return out


def planted_unbalanced(
    n: int,
    k: int,
    rng: np.random.Generator,
    avg_degree: float = 6.0,
    max_light: int = 10,
    certify: bool = True,
) -> tuple[WeightedDigraph, PlantedAnswer]:
    """Rooted instance whose unique minimum sink side T* has 1 <= |T*| <= k.

    The root side and T* are each made strongly connected by heavy
    bidirected cycles, so every other sink set has in-cut above the light
    total entering T*. Heavy random edges are sprinkled inside each side
    and from T* back to the root side.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    size = int(rng.integers(1, min(k, n - 1) + 1))
    others = rng.permutation(np.arange(1, n)).tolist()
    sink = sorted(others[:size])
    src = [0] + others[size:]
    lam = int(rng.integers(1, max_light + 1))
    heavy = lam + 1
    edges: list[tuple[int, int, int]] = []
    edges += _bicycle([0] + [int(v) for v in rng.permutation(src[1:])], heavy)
    edges += _bicycle([int(v) for v in rng.permutation(sink)], heavy)
    # Light edges into T*: split lam over a few random crossing edges.
    parts = int(rng.integers(1, min(lam, 3) + 1))
    cuts = sorted(rng.choice(np.arange(1, lam), size=parts - 1, replace=False).tolist()) if parts > 1 else []
    amounts = [b - a for a, b in zip([0] + cuts, cuts + [lam])]
    for amt in amounts:
        edges.append((int(rng.choice(src)), int(rng.choice(sink)), int(amt)))
    extra = max(0, int(avg_degree * n) - len(edges))
    sink_set = set(sink)
    for _ in range(extra):
        u, v = (int(x) for x in rng.integers(0, n, size=2))
        if u == v or v == 0 or (u not in sink_set and v in sink_set):
            continue
        edges.append((u, v, int(rng.integers(heavy, 4 * heavy + 1))))
    G = build_graph(n, 0, edges)
    ans = PlantedAnswer(lam, frozenset(sink))
    assert in_cut_value(G, ans.sink_side) == lam
    if certify:
        ref = reference_s_mincut(G)
        assert ref.value == lam, "planted cut is not minimum"
    return G, ans


def planted_vertex(
    n: int,
    rng: np.random.Generator,
    sep_size: int | None = None,
    max_weight: int = 10,
) -> tuple[VertexWeightedDigraph, PlantedAnswer]:
    """Rooted vertex instance with a planted tri-partition (L, X, R).

    L (containing root 0) and R are complete, the root points at all of L
    and X, and there are no L -> R arcs, so R is the only admissible sink
    component and X is the minimum separator.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    perm = rng.permutation(np.arange(1, n)).tolist()
    xs = sep_size if sep_size is not None else int(rng.integers(1, max(1, (n - 1) // 3) + 1))
    xs = max(1, min(xs, n - 2))
    rs = int(rng.integers(1, n - 1 - xs + 1))
    X = perm[:xs]
    R = perm[xs : xs + rs]
    L = [0] + perm[xs + rs :]
    arcs = []
    for grp in (L, R):
        arcs += [(u, v) for u in grp for v in grp if u != v]
    arcs += [(0, x) for x in X]
    arcs += [(u, x) for u in L for x in X if rng.random() < 0.5]
    for x in X:
        arcs.append((x, int(rng.choice(R))))
        arcs += [(x, r) for r in R if rng.random() < 0.5]
    arcs += [(r, u) for r in R for u in L + X if rng.random() < 0.3]
    w = [0] * n
    for v in range(n):
        w[v] = int(rng.integers(1, max_weight + 1))
    heavy = sum(w[x] for x in X) + 1
    for v in R + L:
        w[v] = max(w[v], heavy)
    G = build_vertex_graph(n, 0, arcs, w)
    ans = PlantedAnswer(sum(w[x] for x in X), frozenset(R), frozenset(X))
    assert vertex_in_cut_value(G, R) == ans.value
    return G, ans


def random_vertex_graph(
    n: int, p: float, max_weight: int, rng: np.random.Generator, root: int = 0
) -> VertexWeightedDigraph:
    mask = rng.random((n, n)) < p
    arcs = [(u, v) for u in range(n) for v in range(n) if u != v and mask[u, v]]
    w = rng.integers(1, max_weight + 1, size=n).tolist()
    return build_vertex_graph(n, root, arcs, w)
