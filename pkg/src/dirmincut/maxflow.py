"""Dinic max-flow with residual-graph mincut extraction and a call counter."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .graph import CutResult, GraphError, WeightedDigraph

INF = 1 << 62


class FlowCounter:
    """Counts max-flow invocations; drivers read deltas around their work."""

    def __init__(self) -> None:
        self.calls = 0

    def bump(self) -> None:
        self.calls += 1


COUNTER = FlowCounter()


def call_count() -> int:
    return COUNTER.calls


class NotMaximalError(GraphError):
    pass


@dataclass(frozen=True)
class FlowResult:
    value: int
    flow: tuple[int, ...]
    source: int
    sink: int


class FlowNetwork:
    """Residual network over paired arcs: arc 2i is edge i, arc 2i+1 its reverse.

    Kept separate from :class:`WeightedDigraph` so callers can build networks
    with INF capacities or extra vertices without normalizing.
    """

    def __init__(self, n: int, edges: Sequence[tuple[int, int, int]]):
        self.n = n
        m = len(edges)
        head = [0] * (2 * m)
        cap = [0] * (2 * m)
        adj: list[list[int]] = [[] for _ in range(n)]
        for i, (u, v, c) in enumerate(edges):
            head[2 * i] = v
            head[2 * i + 1] = u
            cap[2 * i] = c
            adj[u].append(2 * i)
            adj[v].append(2 * i + 1)
        self.head = head
        self.cap = cap
        self.orig = list(cap)
        self.adj = adj

    def edge_flow(self, i: int) -> int:
        return self.orig[2 * i] - self.cap[2 * i]

    def _levels(self, s: int, t: int) -> list[int] | None:
        level = [-1] * self.n
        level[s] = 0
        q = deque([s])
        head, cap, adj = self.head, self.cap, self.adj
        while q:
            u = q.popleft()
            for a in adj[u]:
                if cap[a] > 0 and level[head[a]] < 0:
                    level[head[a]] = level[u] + 1
                    q.append(head[a])
        return level if level[t] >= 0 else None

    def run(self, s: int, t: int) -> int:
        head, cap, adj = self.head, self.cap, self.adj
        total = 0
        while True:
            level = self._levels(s, t)
            if level is None:
                return total
            it = [0] * self.n
            while True:
                # Iterative DFS for one blocking-flow path.
                path: list[int] = []
                u = s
                while u != t:
                    arcs = adj[u]
                    i = it[u]
                    while i < len(arcs):
                        a = arcs[i]
                        if cap[a] > 0 and level[head[a]] == level[u] + 1:
                            break
                        i += 1
                    it[u] = i
                    if i == len(arcs):
                        if u == s:
                            break
                        level[u] = -1
                        a = path.pop()
                        u = head[a ^ 1]
                        it[u] += 1
                        continue
                    path.append(arcs[i])
                    u = head[arcs[i]]
                if u != t:
                    break
                push = min(cap[a] for a in path)
                for a in path:
                    cap[a] -= push
                    cap[a ^ 1] += push
                total += push

    def reaches_backward(self, t: int, allowed: Sequence[bool] | None = None) -> list[bool]:
        """Vertices that can reach t via positive-residual arcs."""
        seen = [False] * self.n
        seen[t] = True
        stack = [t]
        head, cap, adj = self.head, self.cap, self.adj
        while stack:
            v = stack.pop()
            for a in adj[v]:
                # a runs v->u; its partner u->v has residual cap[a^1].
                u = head[a]
                if not seen[u] and cap[a ^ 1] > 0 and (allowed is None or allowed[u]):
                    seen[u] = True
                    stack.append(u)
        return seen

    def reaches_forward(self, s: int) -> list[bool]:
        seen = [False] * self.n
        seen[s] = True
        stack = [s]
        head, cap, adj = self.head, self.cap, self.adj
        while stack:
            u = stack.pop()
            for a in adj[u]:
                v = head[a]
                if not seen[v] and cap[a] > 0:
                    seen[v] = True
                    stack.append(v)
        return seen


def max_flow_network(
    n: int, edges: Sequence[tuple[int, int, int]], source: int, sink: int
) -> tuple[int, FlowNetwork]:
    """Max flow on a raw edge list; returns the value and the residual network."""
    if source == sink:
        raise GraphError("source and sink must differ")
    COUNTER.bump()
    net = FlowNetwork(n, edges)
    return net.run(source, sink), net


def max_flow(G: WeightedDigraph, source: int, sink: int) -> FlowResult:
    value, net = max_flow_network(G.n, G.edges, source, sink)
    return FlowResult(
        value=value,
        flow=tuple(net.edge_flow(i) for i in range(G.m)),
        source=source,
        sink=sink,
    )


def min_cut_sink_side(G: WeightedDigraph, flow: FlowResult) -> frozenset[int]:
    """Vertices that can reach the sink in the residual graph of ``flow``."""
    net = FlowNetwork(G.n, G.edges)
    for i, f in enumerate(flow.flow):
        if not 0 <= f <= G.edges[i][2]:
            raise GraphError(f"flow on edge {i} violates its capacity")
        net.cap[2 * i] -= f
        net.cap[2 * i + 1] += f
    side = net.reaches_backward(flow.sink)
    if side[flow.source]:
        raise NotMaximalError("residual graph has an augmenting path")
    return frozenset(v for v in range(G.n) if side[v])


def reference_s_mincut(G: WeightedDigraph, s: int | None = None) -> CutResult:
    """Exact rooted mincut by one max-flow per candidate sink vertex."""
    if G.n < 2:
        raise GraphError("need at least two vertices")
    s = G.root if s is None else s
    best: CutResult | None = None
    calls = 0
    for t in range(G.n):
        if t == s:
            continue
        value, net = max_flow_network(G.n, G.edges, s, t)
        calls += 1
        if best is None or value < best.value:
            side = net.reaches_backward(t)
            best = CutResult(
                sink_side=frozenset(v for v in range(G.n) if side[v]),
                value=value,
                witness_origin="reference",
            )
    assert best is not None
    return CutResult(best.sink_side, best.value, "input", "reference", calls)
