"""Weighted digraph representation, cut evaluation, reversal and contraction."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

MAX_TOTAL_WEIGHT = 1 << 62

Edge = tuple[int, int, int]


class GraphError(ValueError):
    """Raised for malformed graphs or invalid graph arguments."""


@dataclass(frozen=True, eq=False)
class WeightedDigraph:
    """Edge-weighted directed multigraph with a distinguished root.

    Build instances with :func:`build_graph`, which normalizes the edge list.
    Edge ids are positions in ``edges``; ``out_edges[u]`` and ``in_edges[v]``
    hold edge ids.
    """

    n: int
    root: int
    edges: tuple[Edge, ...]
    out_edges: tuple[tuple[int, ...], ...] = field(repr=False, default=())
    in_edges: tuple[tuple[int, ...], ...] = field(repr=False, default=())

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def total_weight(self) -> int:
        return sum(w for _, _, w in self.edges)

    def weight(self, eid: int) -> int:
        return self.edges[eid][2]

    def out_weight(self, u: int) -> int:
        return sum(self.edges[e][2] for e in self.out_edges[u])

    def in_weight(self, v: int) -> int:
        return sum(self.edges[e][2] for e in self.in_edges[v])

    def in_degree(self, v: int) -> int:
        """Unweighted in-degree (parallel edges counted separately)."""
        return len(self.in_edges[v])

    def with_root(self, root: int) -> "WeightedDigraph":
        return build_graph(self.n, root, self.edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedDigraph):
            return NotImplemented
        return (self.n, self.root, self.edges) == (other.n, other.root, other.edges)

    def __hash__(self) -> int:
        return hash((self.n, self.root, self.edges))


@dataclass(frozen=True)
class CutResult:
    """A sink-side vertex set together with its in-cut value.

    ``value`` is measured in the graph named by ``graph_tag``. ``maxflow_calls``
    records how many max-flow computations the producing pipeline ran.
    """

    sink_side: frozenset[int]
    value: int
    graph_tag: str = "input"
    witness_origin: str = ""
    maxflow_calls: int = 0
    notes: tuple[str, ...] = ()

    def sorted_sink(self) -> list[int]:
        return sorted(self.sink_side)


def build_graph(
    n: int, root: int, edges: Iterable[Sequence[int]], check_total: bool = True
) -> WeightedDigraph:
    """Validate and normalize an edge list into a :class:`WeightedDigraph`.

    Self-loops and zero-weight edges are dropped; parallel edges are kept.
    ``check_total=False`` admits INF-capacity edges in auxiliary flow graphs.
    """
    if n < 1:
        raise GraphError(f"vertex count must be positive, got {n}")
    if not 0 <= root < n:
        raise GraphError(f"root {root} out of range for n={n}")
    kept: list[Edge] = []
    total = 0
    for e in edges:
        u, v, w = int(e[0]), int(e[1]), int(e[2])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has a vertex id out of range for n={n}")
        if w < 0:
            raise GraphError(f"edge ({u}, {v}) has negative weight {w}")
        if u == v or w == 0:
            continue
        kept.append((u, v, w))
        total += w
    if check_total and total >= MAX_TOTAL_WEIGHT:
        raise GraphError("total edge weight must stay below 2^62")
    out_adj: list[list[int]] = [[] for _ in range(n)]
    in_adj: list[list[int]] = [[] for _ in range(n)]
    for i, (u, v, _) in enumerate(kept):
        out_adj[u].append(i)
        in_adj[v].append(i)
    return WeightedDigraph(
        n=n,
        root=root,
        edges=tuple(kept),
        out_edges=tuple(tuple(a) for a in out_adj),
        in_edges=tuple(tuple(a) for a in in_adj),
    )


def _as_mask(G: WeightedDigraph, U: Iterable[int]) -> list[bool]:
    mask = [False] * G.n
    count = 0
    for u in U:
        if not 0 <= u < G.n:
            raise GraphError(f"vertex {u} out of range")
        if not mask[u]:
            mask[u] = True
            count += 1
    if count == 0 or count == G.n:
        raise GraphError("cut side must be nonempty and proper")
    return mask


def out_cut_value(G: WeightedDigraph, U: Iterable[int]) -> int:
    """Total weight of edges leaving U."""
    mask = _as_mask(G, U)
    return sum(w for u, v, w in G.edges if mask[u] and not mask[v])


def in_cut_value(G: WeightedDigraph, U: Iterable[int]) -> int:
    """Total weight of edges entering U."""
    mask = _as_mask(G, U)
    return sum(w for u, v, w in G.edges if mask[v] and not mask[u])


def reverse(G: WeightedDigraph) -> WeightedDigraph:
    return build_graph(G.n, G.root, [(v, u, w) for u, v, w in G.edges])


def reachable_from(G: WeightedDigraph, s: int) -> list[bool]:
    seen = [False] * G.n
    seen[s] = True
    stack = [s]
    while stack:
        u = stack.pop()
        for e in G.out_edges[u]:
            v = G.edges[e][1]
            if not seen[v]:
                seen[v] = True
                stack.append(v)
    return seen


def contract_into_root(
    G: WeightedDigraph, X: Iterable[int]
) -> tuple[WeightedDigraph, list[int]]:
    """Merge every vertex of X into the root.

    Surviving vertices are renumbered compactly in increasing id order, so
    the root keeps its relative position. Edges whose head becomes the root
    are removed along with resulting self-loops. Returns the new graph and
    ``vertex_map`` (old id to new id, X mapped to the new root).
    """
    Xs = set(X)
    if G.root in Xs:
        raise GraphError("contraction set must not contain the root")
    vertex_map = [-1] * G.n
    nxt = 0
    for v in range(G.n):
        if v not in Xs:
            vertex_map[v] = nxt
            nxt += 1
    new_root = vertex_map[G.root]
    for v in Xs:
        vertex_map[v] = new_root
    new_edges = []
    for u, v, w in G.edges:
        nu, nv = vertex_map[u], vertex_map[v]
        if nv == new_root or nu == nv:
            continue
        new_edges.append((nu, nv, w))
    return build_graph(nxt, new_root, new_edges), vertex_map


def contract_by_map(G: WeightedDigraph, vertex_map: Sequence[int]) -> WeightedDigraph:
    """Apply a contraction map produced by :func:`contract_into_root`."""
    X = [v for v in range(G.n) if v != G.root and vertex_map[v] == vertex_map[G.root]]
    H, vm = contract_into_root(G, X)
    if list(vm) != list(vertex_map):
        raise GraphError("vertex map does not describe a root contraction of G")
    return H


def lift_sink_side(vertex_map: Sequence[int], sink: Iterable[int]) -> frozenset[int]:
    """Map a sink side of a contracted graph back to original vertex ids."""
    sink = set(sink)
    return frozenset(v for v, nv in enumerate(vertex_map) if nv in sink)


@dataclass(frozen=True, eq=False)
class VertexWeightedDigraph:
    """Digraph with unweighted arcs and nonnegative integer vertex weights.

    The root's weight is ignored by every cut computation. Duplicate arcs and
    self-loops are dropped at construction.
    """

    n: int
    root: int
    arcs: tuple[tuple[int, int], ...]
    vertex_weight: tuple[int, ...]
    succ: tuple[tuple[int, ...], ...] = field(repr=False, default=())
    pred: tuple[tuple[int, ...], ...] = field(repr=False, default=())

    @property
    def m(self) -> int:
        return len(self.arcs)

    def with_root(self, root: int) -> "VertexWeightedDigraph":
        return build_vertex_graph(self.n, root, self.arcs, self.vertex_weight)

    def total_weight(self) -> int:
        return sum(self.vertex_weight)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VertexWeightedDigraph):
            return NotImplemented
        return (self.n, self.root, self.arcs, self.vertex_weight) == (
            other.n,
            other.root,
            other.arcs,
            other.vertex_weight,
        )

    def __hash__(self) -> int:
        return hash((self.n, self.root, self.arcs, self.vertex_weight))


def build_vertex_graph(
    n: int,
    root: int,
    arcs: Iterable[Sequence[int]],
    vertex_weight: Sequence[int],
) -> VertexWeightedDigraph:
    if n < 1:
        raise GraphError(f"vertex count must be positive, got {n}")
    if not 0 <= root < n:
        raise GraphError(f"root {root} out of range for n={n}")
    if len(vertex_weight) != n:
        raise GraphError("need exactly one weight per vertex")
    weights = tuple(int(w) for w in vertex_weight)
    if any(w < 0 for w in weights):
        raise GraphError("vertex weights must be nonnegative")
    if sum(weights) > MAX_TOTAL_WEIGHT:
        raise GraphError("total vertex weight exceeds 2^62")
    seen: set[tuple[int, int]] = set()
    kept: list[tuple[int, int]] = []
    for a in arcs:
        u, v = int(a[0]), int(a[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"arc ({u}, {v}) has a vertex id out of range for n={n}")
        if u == v or (u, v) in seen:
            continue
        seen.add((u, v))
        kept.append((u, v))
    succ: list[list[int]] = [[] for _ in range(n)]
    pred: list[list[int]] = [[] for _ in range(n)]
    for u, v in kept:
        succ[u].append(v)
        pred[v].append(u)
    return VertexWeightedDigraph(
        n=n,
        root=root,
        arcs=tuple(kept),
        vertex_weight=weights,
        succ=tuple(tuple(a) for a in succ),
        pred=tuple(tuple(a) for a in pred),
    )


@dataclass(frozen=True)
class VertexCutResult:
    """Separator X and sink component T with value w(X).

    ``degenerate`` marks the fallback answer used when no proper separator
    exists because the root (or every vertex) dominates the graph.
    """

    separator: frozenset[int]
    sink_component: frozenset[int]
    value: int
    degenerate: bool = False
    maxflow_calls: int = 0
    notes: tuple[str, ...] = ()


def in_neighborhood(G: VertexWeightedDigraph, T: Iterable[int]) -> frozenset[int]:
    """Vertices outside T with an arc into T."""
    Ts = set(T)
    return frozenset(u for v in Ts for u in G.pred[v] if u not in Ts)


def vertex_in_cut_value(G: VertexWeightedDigraph, T: Iterable[int]) -> int:
    Ts = set(T)
    if not Ts:
        raise GraphError("sink component must be nonempty")
    if G.root in Ts:
        raise GraphError("sink component must exclude the root")
    return sum(G.vertex_weight[u] for u in in_neighborhood(G, Ts))


def out_neighbors(G: VertexWeightedDigraph, v: int) -> frozenset[int]:
    return frozenset(G.succ[v])


def reverse_vertex_graph(G: VertexWeightedDigraph) -> VertexWeightedDigraph:
    return build_vertex_graph(G.n, G.root, [(v, u) for u, v in G.arcs], G.vertex_weight)
