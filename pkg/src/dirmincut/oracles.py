"""Exhaustive oracles for small instances."""

from __future__ import annotations

import itertools

import numpy as np

from .graph import (
    CutResult,
    GraphError,
    VertexCutResult,
    VertexWeightedDigraph,
    WeightedDigraph,
)
from .packing import Arborescence

MAX_EDGE_ORACLE_N = 20
MAX_VERTEX_ORACLE_N = 14
MAX_ARB_ORACLE_N = 6


def _bits(mask: int, n: int) -> frozenset[int]:
    return frozenset(v for v in range(n) if mask >> v & 1)


def all_in_cut_values(G: WeightedDigraph, s: int) -> tuple[np.ndarray, np.ndarray]:
    """Every sink set T (as a bitmask over V, s excluded) with its in-cut value."""
    n = G.n
    others = [v for v in range(n) if v != s]
    sub = np.arange(1, 1 << (n - 1), dtype=np.int64)
    masks = np.zeros_like(sub)
    for i, v in enumerate(others):
        masks |= ((sub >> i) & 1) << v
    vals = np.zeros(len(masks), dtype=np.int64)
    for u, v, w in G.edges:
        vals += w * (((masks >> v) & 1) & (1 - ((masks >> u) & 1)))
    return masks, vals


def _lexmin(masks: np.ndarray, n: int) -> frozenset[int]:
    sets = [tuple(sorted(_bits(int(m), n))) for m in masks]
    return frozenset(min(sets))


def brute_force_s_mincut(G: WeightedDigraph, s: int | None = None) -> CutResult:
    """Minimum in-cut over all nonempty sink sets; ties go to the lexicographically smallest."""
    s = G.root if s is None else s
    if G.n < 2:
        raise GraphError("need at least two vertices")
    if G.n > MAX_EDGE_ORACLE_N:
        raise GraphError(f"brute force limited to n <= {MAX_EDGE_ORACLE_N}")
    masks, vals = all_in_cut_values(G, s)
    best = int(vals.min())
    return CutResult(_lexmin(masks[vals == best], G.n), best, "input", "brute-force")


def brute_force_global_mincut(G: WeightedDigraph) -> CutResult:
    """Minimum over all ordered bipartitions (S, V - S) of the out-cut of S."""
    if G.n < 2:
        raise GraphError("need at least two vertices")
    if G.n > MAX_EDGE_ORACLE_N:
        raise GraphError(f"brute force limited to n <= {MAX_EDGE_ORACLE_N}")
    full = (1 << G.n) - 1
    masks = np.arange(1, full, dtype=np.int64)
    vals = np.zeros(len(masks), dtype=np.int64)
    for u, v, w in G.edges:
        vals += w * (((masks >> v) & 1) & (1 - ((masks >> u) & 1)))
    best = int(vals.min())
    return CutResult(_lexmin(masks[vals == best], G.n), best, "input", "brute-force")


def _vertex_candidates(G: VertexWeightedDigraph, s: int | None):
    """Yield (R, X) with R nonempty, X = in-neighbours of R, and a nonempty rest.

    When s is given the rest must contain s and X must avoid s.
    """
    n = G.n
    pred_mask = [sum(1 << u for u in G.pred[v]) for v in range(n)]
    full = (1 << n) - 1
    for R in range(1, full + 1):
        if s is not None and R >> s & 1:
            continue
        inn = 0
        r = R
        while r:
            low = r & -r
            inn |= pred_mask[low.bit_length() - 1]
            r ^= low
        X = inn & ~R
        L = full & ~R & ~X
        if s is not None:
            if X >> s & 1:
                continue
        elif L == 0:
            continue
        yield R, X


def brute_force_vertex_cut(
    G: VertexWeightedDigraph, s: int | None = None
) -> VertexCutResult:
    """Minimum-weight separator over tri-partitions (L, X, R) with no L -> R arc.

    Rooted when s is given (s in L), global otherwise. If no tri-partition
    exists the degenerate answer is returned: rooted, keep the heaviest
    non-root vertex as the sink; global, keep the two heaviest vertices.
    """
    n = G.n
    if n > MAX_VERTEX_ORACLE_N:
        raise GraphError(f"brute force limited to n <= {MAX_VERTEX_ORACLE_N}")
    w = G.vertex_weight
    best = None
    for R, X in _vertex_candidates(G, s):
        val = sum(w[v] for v in range(n) if X >> v & 1)
        key = (val, sorted(_bits(R, n)))
        if best is None or key < best[0]:
            best = (key, R, X)
    if best is not None:
        (val, _), R, X = best
        return VertexCutResult(_bits(X, n), _bits(R, n), val)
    return degenerate_vertex_cut(G, s)


def degenerate_vertex_cut(G: VertexWeightedDigraph, s: int | None) -> VertexCutResult:
    w = G.vertex_weight
    if s is not None:
        others = [v for v in range(G.n) if v != s]
        if not others:
            raise GraphError("need at least two vertices")
        t = min(others, key=lambda v: (-w[v], v))
        X = frozenset(v for v in others if v != t)
        return VertexCutResult(X, frozenset([t]), sum(w[v] for v in X), degenerate=True)
    if G.n < 2:
        raise GraphError("need at least two vertices")
    a, b = sorted(range(G.n), key=lambda v: (-w[v], v))[:2]
    X = frozenset(v for v in range(G.n) if v not in (a, b))
    return VertexCutResult(X, frozenset([b]), sum(w[v] for v in X), degenerate=True)


def tripartition_vertex_cut(G: VertexWeightedDigraph, s: int | None = None) -> int | None:
    """Value by literal enumeration of all 3^n labelings; None if none is valid."""
    n = G.n
    if n > 8:
        raise GraphError("literal tri-partition enumeration limited to n <= 8")
    best = None
    for lab in itertools.product((0, 1, 2), repeat=n):
        if 0 not in lab or 2 not in lab:
            continue
        if s is not None and lab[s] != 0:
            continue
        if any(lab[u] == 0 and lab[v] == 2 for u, v in G.arcs):
            continue
        val = sum(G.vertex_weight[v] for v in range(n) if lab[v] == 1)
        if best is None or val < best:
            best = val
    return best


def brute_force_vertex_st_cut(G: VertexWeightedDigraph, s: int, t: int) -> int | None:
    """Minimum w(X) over X avoiding s and t that cuts every s-t path; None if s -> t."""
    if t in G.succ[s]:
        return None
    n = G.n
    w = G.vertex_weight
    inner = [v for v in range(n) if v not in (s, t)]
    best = None
    for r in range(len(inner) + 1):
        for X in itertools.combinations(inner, r):
            val = sum(w[v] for v in X)
            if best is not None and val >= best:
                continue
            blocked = set(X)
            seen = {s}
            stack = [s]
            while stack:
                u = stack.pop()
                for v in G.succ[u]:
                    if v not in seen and v not in blocked:
                        seen.add(v)
                        stack.append(v)
            if t not in seen:
                best = val
    return best


def brute_force_arborescences(G: WeightedDigraph, s: int | None = None) -> list[Arborescence]:
    """Every spanning s-arborescence, one per acyclic choice of parent edges."""
    s = G.root if s is None else s
    if G.n > MAX_ARB_ORACLE_N:
        raise GraphError(f"brute force limited to n <= {MAX_ARB_ORACLE_N}")
    others = [v for v in range(G.n) if v != s]
    choices = [[e for e in G.in_edges[v] if G.edges[e][0] != v] for v in others]
    out = []
    for pick in itertools.product(*choices):
        parent = [-1] * G.n
        for v, e in zip(others, pick):
            parent[v] = G.edges[e][0]
        ok = True
        for v in others:
            x, steps = v, 0
            while x != s and steps <= G.n:
                x = parent[x]
                steps += 1
            if x != s:
                ok = False
                break
        if ok:
            pe: list[tuple[int, int, int] | None] = [None] * G.n
            for v, e in zip(others, pick):
                pe[v] = (G.edges[e][0], v, e)
            out.append(Arborescence(s, tuple(pe)))
    return out
