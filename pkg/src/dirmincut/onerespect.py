"""Exact rooted mincut for cuts crossing a given arborescence exactly once.

The tree is split by centroid decomposition into O(log n) layers. For each
layer a single max-flow is run in an auxiliary graph in which every subtree
of that layer sees the rest of the graph as the root, and each subtree's
centroid drains into a shared super-sink through an INF edge. The flow on a
centroid's sink edge is the cheapest way to separate that centroid from the
root inside its subtree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import CutResult, GraphError, WeightedDigraph, build_graph
from .maxflow import INF, max_flow_network
from .packing import Arborescence, validate_arborescence


@dataclass(frozen=True)
class CentroidLayers:
    """``layers[0] == ([root], [])``; for i >= 1, ``centroids[j]`` lies in ``subtrees[j]``."""

    layers: tuple[tuple[tuple[int, ...], tuple[frozenset[int], ...]], ...]

    @property
    def depth(self) -> int:
        return len(self.layers) - 1

    def centroids(self, i: int) -> tuple[int, ...]:
        return self.layers[i][0]

    def subtrees(self, i: int) -> tuple[frozenset[int], ...]:
        return self.layers[i][1]


def tree_adjacency(T: Arborescence) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(T.n)]
    for u, v in T.edges():
        adj[u].append(v)
        adj[v].append(u)
    return adj


def find_centroid(adj: list[list[int]], U: Iterable[int]) -> int:
    """Smallest-id vertex whose removal leaves pieces of size <= |U| // 2.

    ``adj`` is an undirected tree adjacency; U must induce a connected subtree.
    """
    Us = set(U)
    if not Us:
        raise GraphError("empty tree has no centroid")
    start = min(Us)
    order = [start]
    par = {start: -1}
    for x in order:
        for y in adj[x]:
            if y in Us and y not in par:
                par[y] = x
                order.append(y)
    if len(order) != len(Us):
        raise GraphError("vertex set is not a connected subtree")
    size = dict.fromkeys(order, 1)
    heaviest = dict.fromkeys(order, 0)
    for x in reversed(order):
        p = par[x]
        if p >= 0:
            size[p] += size[x]
            heaviest[p] = max(heaviest[p], size[x])
    half = len(Us) // 2
    return min(x for x in order if max(heaviest[x], len(Us) - size[x]) <= half)


def _components(adj: list[list[int]], U: set[int]) -> list[frozenset[int]]:
    seen: set[int] = set()
    out = []
    for v in sorted(U):
        if v in seen:
            continue
        comp = [v]
        seen.add(v)
        for x in comp:
            for y in adj[x]:
                if y in U and y not in seen:
                    seen.add(y)
                    comp.append(y)
        out.append(frozenset(comp))
    return out


def centroid_decomposition(T: Arborescence) -> CentroidLayers:
    adj = tree_adjacency(T)
    layers = [((T.root,), ())]
    pieces = _components(adj, set(range(T.n)) - {T.root})
    while pieces:
        cents = tuple(find_centroid(adj, U) for U in pieces)
        layers.append((cents, tuple(pieces)))
        nxt: list[frozenset[int]] = []
        for c, U in zip(cents, pieces):
            nxt.extend(_components(adj, set(U) - {c}))
        pieces = nxt
    return CentroidLayers(tuple(layers))


def build_layer_graph(
    G: WeightedDigraph, layers: CentroidLayers, i: int
) -> tuple[WeightedDigraph, int]:
    """Auxiliary graph for layer i; vertex ``G.n`` is the super-sink.

    Edges inside a subtree keep their weight; every other edge whose head
    lies in a subtree is re-sourced at the root; each centroid gets an INF
    edge to the super-sink.
    """
    if not 1 <= i <= layers.depth:
        raise GraphError(f"layer index {i} out of range 1..{layers.depth}")
    s = G.root
    which = [-1] * G.n
    for j, U in enumerate(layers.subtrees(i)):
        for v in U:
            which[v] = j
    edges = []
    for u, v, w in G.edges:
        if which[v] < 0:
            continue
        if which[u] == which[v]:
            edges.append((u, v, w))
        else:
            edges.append((s, v, w))
    t = G.n
    edges.extend((c, t, INF) for c in layers.centroids(i))
    return build_graph(G.n + 1, s, edges, check_total=False), t


@dataclass(frozen=True)
class Candidate:
    layer: int
    centroid: int
    value: int
    sink_side: frozenset[int]


def one_respecting_candidates(
    G: WeightedDigraph, T: Arborescence, require_edges: bool = True
) -> tuple[list[Candidate], int]:
    """All per-centroid candidates plus the number of max-flow calls used."""
    if T.root != G.root:
        raise GraphError("tree root must equal the graph root")
    validate_arborescence(T, G, require_edges=require_edges)
    layers = centroid_decomposition(T)
    s = G.root
    out: list[Candidate] = []
    calls = 0
    for i in range(1, layers.depth + 1):
        Gi, t = build_layer_graph(G, layers, i)
        _, net = max_flow_network(Gi.n, Gi.edges, s, t)
        calls += 1
        sink_edge = {Gi.edges[e][0]: e for e in Gi.in_edges[t]}
        for c, U in zip(layers.centroids(i), layers.subtrees(i)):
            allowed = [False] * Gi.n
            for v in U:
                allowed[v] = True
            reach = net.reaches_backward(c, allowed)
            side = frozenset(v for v in U if reach[v])
            out.append(Candidate(i, c, net.edge_flow(sink_edge[c]), side))
    return out, calls


def min_one_respecting_cut(
    G: WeightedDigraph, s: int, T: Arborescence, require_edges: bool = True
) -> CutResult:
    """Best candidate over all layers.

    Exact when some minimum s-cut crosses T exactly once; otherwise an upper
    bound, since every candidate is a genuine cut of G. ``require_edges=False``
    accepts trees whose edges are not in G, which leaves the guarantee intact.
    """
    if s != G.root:
        G = G.with_root(s)
    if G.n < 2:
        raise GraphError("need at least two vertices")
    cands, calls = one_respecting_candidates(G, T, require_edges)
    best = min(cands, key=lambda c: (c.value, c.layer, c.centroid))
    return CutResult(best.sink_side, best.value, "input", "one-respecting", calls)
