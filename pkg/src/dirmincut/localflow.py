"""Local unit-augmenting flow for small vertex cuts around a sink t.

The structure works on the split graph of the reversed sparsifier. For a
vertex v, ``in`` and ``out`` are its two split nodes; ``v.in -> v.out``
carries the vertex weight. An arc (u, v) of the sparsifier becomes
``v.out -> u.in`` with INF capacity. The auxiliary path of v is folded into
a single edge ``v.out -> r.in`` whose capacity is the auxiliary weight, and
real root arcs become INF edges to ``r.in``.

Flow is pushed from ``t.out`` to ``r.in`` one unit at a time. A search stops
at the first out-node whose edge to ``r.in`` has residual capacity, or at
the first in-node whose internal edge has residual capacity and whose
out-node can still reach ``r.in`` directly. Only edges near t are ever
touched, and the touched state is rolled back after each query.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import GraphError, VertexWeightedDigraph
from .maxflow import INF
from .vertex import VertexSparsified, candidate_sinks, vertex_sparsify

SEARCH_CONSTANT = 4


@dataclass
class QueryStats:
    flow: int = 0
    exceeded: bool = False
    max_traversals: int = 0
    saturated_outs: int = 0
    searches: int = 0


class LocalCutStructure:
    """Answers ``query(t)`` with a sink component or None ("exceeds kappa")."""

    def __init__(
        self,
        G: VertexWeightedDigraph,
        s: int,
        kappa: int,
        k: int,
        eps: float,
        rng: np.random.Generator,
        sparsified: VertexSparsified | None = None,
    ):
        self.G = G
        self.s = s
        self.kappa = kappa
        self.k = k
        self.eps = eps
        sp = sparsified if sparsified is not None else vertex_sparsify(G, s, kappa, k, eps, rng)
        self.sp = sp
        H = sp.graph
        self.n = sp.n_real
        n = self.n
        self.budget = math.floor((1 + eps / 2) * kappa / sp.tau)
        self.valid = set(candidate_sinks(G, s))
        self.weight = [H.vertex_weight[v] for v in range(n)]
        # Residual capacity of v.out -> r.in: aux units, INF for real root arcs.
        self.root_cap = [0] * n
        root_succ = set(H.succ[s])
        for v in range(n):
            if v == s:
                continue
            if v in root_succ:
                self.root_cap[v] = INF
            elif v in sp.aux_of and sp.aux_of[v] in H.pred[v]:
                self.root_cap[v] = sp.aux_units
        # v.out -> u.in for every sparsifier arc (u, v) between real vertices.
        self.out_arcs: list[list[int]] = [
            [u for u in H.pred[v] if u < n and u != s] for v in range(n)
        ]
        self.max_in_degree = max((len(H.pred[v]) for v in range(H.n)), default=0)
        self.beta = max(self.budget + 2, self.max_in_degree + 3)
        self.traversal_limit = SEARCH_CONSTANT * self.beta * self.beta
        self.last = QueryStats()

    def _reset(self) -> None:
        self.internal_flow: dict[int, int] = {}
        self.root_flow: dict[int, int] = {}
        self.arc_flow: dict[tuple[int, int], int] = {}  # (v, u): flow on v.out -> u.in
        self.into_in: dict[int, set[int]] = {}  # u -> {v : flow on v.out -> u.in > 0}

    def _out_unsat(self, v: int) -> bool:
        return self.root_flow.get(v, 0) < self.root_cap[v]

    def _in_term(self, v: int) -> bool:
        return self.internal_flow.get(v, 0) < self.weight[v] and self._out_unsat(v)

    def _search(self) -> tuple[list[tuple[str, int, int]] | None, int, set]:
        """DFS over residual arcs from t.out; returns (path, traversals, visited)."""
        t = self.t
        start = ("o", t)
        if self._out_unsat(t):
            return [("root", t, 0)], 0, {start}
        seen = {start}
        parent: dict[tuple[str, int], tuple[tuple[str, int], tuple[str, int, int]]] = {}
        stack = [start]
        trav = 0
        while stack:
            node = stack.pop()
            kind, v = node
            if kind == "o":
                nbrs = []
                for u in self.out_arcs[v]:
                    nbrs.append((("i", u), ("arc", v, u)))
                if self.internal_flow.get(v, 0) > 0:
                    nbrs.append((("i", v), ("int-", v, 0)))
            else:
                nbrs = []
                if self.internal_flow.get(v, 0) < self.weight[v]:
                    nbrs.append((("o", v), ("int", v, 0)))
                for x in self.into_in.get(v, ()):
                    nbrs.append((("o", x), ("arc-", x, v)))
            for nxt, step in nbrs:
                trav += 1
                if nxt in seen:
                    continue
                seen.add(nxt)
                parent[nxt] = (node, step)
                nk, nv = nxt
                done = None
                if nk == "o" and self._out_unsat(nv):
                    done = [("root", nv, 0)]
                elif nk == "i" and self._in_term(nv):
                    done = [("int", nv, 0), ("root", nv, 0)]
                if done is not None:
                    steps = []
                    cur = nxt
                    while cur != start:
                        prev, st = parent[cur]
                        steps.append(st)
                        cur = prev
                    steps.reverse()
                    return steps + done, trav, seen
                stack.append(nxt)
        return None, trav, seen

    def _augment(self, path: list[tuple[str, int, int]]) -> None:
        for kind, a, b in path:
            if kind == "root":
                self.root_flow[a] = self.root_flow.get(a, 0) + 1
            elif kind == "int":
                self.internal_flow[a] = self.internal_flow.get(a, 0) + 1
            elif kind == "int-":
                self.internal_flow[a] -= 1
            elif kind == "arc":
                f = self.arc_flow.get((a, b), 0) + 1
                self.arc_flow[(a, b)] = f
                self.into_in.setdefault(b, set()).add(a)
            elif kind == "arc-":
                f = self.arc_flow[(a, b)] - 1
                self.arc_flow[(a, b)] = f
                if f == 0:
                    self.into_in[b].discard(a)

    def query(self, t: int) -> frozenset[int] | None:
        """Sink component of a minimum (root, t) cut in the sparsifier, or None.

        None means more than ``budget`` units were routed, which certifies
        that every cut with at most k sink vertices exceeds kappa.
        """
        if t not in self.valid:
            raise GraphError(f"vertex {t} is not a candidate sink")
        self.t = t
        self._reset()
        stats = QueryStats()
        flow = 0
        while True:
            path, trav, seen = self._search()
            stats.searches += 1
            stats.max_traversals = max(stats.max_traversals, trav)
            if trav > self.traversal_limit:
                raise AssertionError(
                    f"search traversed {trav} edges, limit {self.traversal_limit}"
                )
            if path is None:
                break
            self._augment(path)
            flow += 1
            if flow > self.budget:
                stats.exceeded = True
                break
        stats.flow = flow
        stats.saturated_outs = sum(
            1 for v, f in self.root_flow.items() if f >= self.root_cap[v]
        )
        self.last = stats
        self.last_root_flow = dict(self.root_flow)
        self._reset()
        if stats.exceeded:
            return None
        return frozenset(v for kind, v in seen if kind == "o")
