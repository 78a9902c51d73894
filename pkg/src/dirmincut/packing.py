"""Minimum-cost arborescences and multiplicative-weights arborescence packing."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numba
import numpy as np

from .graph import GraphError, WeightedDigraph, reachable_from


class NoArborescenceError(GraphError):
    pass


class PackingLimitError(RuntimeError):
    pass


@dataclass(frozen=True)
class Arborescence:
    """Spanning out-tree stored as one incoming edge per non-root vertex.

    ``parent_edge[v]`` is ``(tail, v, edge_id)`` or ``None`` for the root.
    ``edge_id`` indexes the host graph, or is -1 for edges supplied without one.
    """

    root: int
    parent_edge: tuple[tuple[int, int, int] | None, ...]

    @property
    def n(self) -> int:
        return len(self.parent_edge)

    def parent(self, v: int) -> int:
        pe = self.parent_edge[v]
        return -1 if pe is None else pe[0]

    def edges(self) -> list[tuple[int, int]]:
        return [(pe[0], pe[1]) for pe in self.parent_edge if pe is not None]

    def edge_ids(self) -> tuple[int, ...]:
        return tuple(pe[2] for pe in self.parent_edge if pe is not None)

    @classmethod
    def from_parents(cls, root: int, parents: Sequence[int]) -> "Arborescence":
        pe: list[tuple[int, int, int] | None] = []
        for v, p in enumerate(parents):
            pe.append(None if v == root else (int(p), v, -1))
        return cls(root, tuple(pe))


def validate_arborescence(
    T: Arborescence, G: WeightedDigraph | None = None, require_edges: bool = True
) -> None:
    """Raise unless T spans, is acyclic, and (optionally) uses edges of G."""
    n = T.n
    if G is not None and G.n != n:
        raise GraphError("arborescence and graph disagree on vertex count")
    if not 0 <= T.root < n or T.parent_edge[T.root] is not None:
        raise GraphError("root must have no parent")
    for v, pe in enumerate(T.parent_edge):
        if v == T.root:
            continue
        if pe is None:
            raise GraphError(f"vertex {v} has no parent")
        u, h, eid = pe
        if h != v or not 0 <= u < n or u == v:
            raise GraphError(f"bad parent edge for vertex {v}")
        if G is not None and require_edges:
            if eid >= 0:
                if not (0 <= eid < G.m and G.edges[eid][:2] == (u, v)):
                    raise GraphError(f"edge id {eid} does not match ({u}, {v})")
            elif not any(G.edges[e][0] == u for e in G.in_edges[v]):
                raise GraphError(f"tree edge ({u}, {v}) is not in the graph")
    state = [0] * n
    state[T.root] = 2
    for v in range(n):
        path = []
        x = v
        while state[x] == 0:
            state[x] = 1
            path.append(x)
            x = T.parent_edge[x][0]  # type: ignore[index]
        if state[x] == 1:
            raise GraphError("arborescence contains a cycle")
        for y in path:
            state[y] = 2


def min_cost_arborescence(
    G: WeightedDigraph, s: int, cost: Sequence[float]
) -> Arborescence:
    """Chu-Liu/Edmonds with explicit cycle contraction and expansion.

    Ties between equal costs go to the lowest original edge id.
    """
    if len(cost) != G.m:
        raise GraphError("need one cost per edge")
    if not all(reachable_from(G, s)):
        raise NoArborescenceError("no arborescence exists: some vertex is unreachable")
    ids = _chu_liu_edmonds(G.n, s, [(u, v) for u, v, _ in G.edges], list(cost))
    pe: list[tuple[int, int, int] | None] = [None] * G.n
    for e in ids:
        u, v, _ = G.edges[e]
        pe[v] = (u, v, e)
    return Arborescence(s, tuple(pe))


def _chu_liu_edmonds(
    n: int, root: int, arcs: list[tuple[int, int]], cost: Sequence[float]
) -> list[int]:
    """Edge indices of a min-cost arborescence; lowest index wins cost ties."""
    m = len(arcs)
    U = np.fromiter((a[0] for a in arcs), dtype=np.int64, count=m)
    V = np.fromiter((a[1] for a in arcs), dtype=np.int64, count=m)
    return chu_liu_edmonds_arrays(n, root, U, V, np.asarray(cost, dtype=np.float64))


def chu_liu_edmonds_arrays(
    n: int, root: int, U: np.ndarray, V: np.ndarray, C: np.ndarray
) -> list[int]:
    sel = _cle_kernel(n, root, U, V, C)
    if len(sel) != n - 1:
        raise NoArborescenceError("no arborescence exists")
    return sel.tolist()


@numba.njit(cache=True)
def _cle_kernel(n, root, U0, V0, C0):  # pragma: no cover - compiled
    big = np.iinfo(np.int64).max
    U = U0.copy()
    V = V0.copy()
    C = C0.copy()
    oid = np.arange(len(U0))
    ref = np.arange(len(U0))
    N = n
    r = root
    st_V = [np.empty(0, np.int64)]
    st_best = [np.empty(0, np.int64)]
    st_ref = [np.empty(0, np.int64)]
    st_r = [0]
    st_V.pop()
    st_best.pop()
    st_ref.pop()
    st_r.pop()
    while True:
        best = np.full(N, -1, np.int64)
        bc = np.full(N, np.inf)
        bo = np.full(N, big, np.int64)
        for i in range(len(U)):
            v = V[i]
            if v == r or U[i] == v:
                continue
            c = C[i]
            if c < bc[v] or (c == bc[v] and oid[i] < bo[v]):
                bc[v] = c
                bo[v] = oid[i]
                best[v] = i
        for v in range(N):
            if v != r and best[v] < 0:
                return np.empty(0, np.int64)
        comp = np.full(N, -1, np.int64)
        mark = np.full(N, -1, np.int64)
        ncyc = 0
        for v0 in range(N):
            x = v0
            while x != r and mark[x] < 0 and comp[x] < 0:
                mark[x] = v0
                x = U[best[x]]
            if x != r and mark[x] == v0 and comp[x] < 0:
                y = x
                while True:
                    comp[y] = ncyc
                    y = U[best[y]]
                    if y == x:
                        break
                ncyc += 1
        if ncyc == 0:
            sel = np.empty(N - 1, np.int64)
            j = 0
            for v in range(N):
                if v != r:
                    sel[j] = best[v]
                    j += 1
            break
        nxt = ncyc
        for v in range(N):
            if comp[v] < 0:
                comp[v] = nxt
                nxt += 1
        live = 0
        for i in range(len(U)):
            if V[i] != r and comp[U[i]] != comp[V[i]]:
                live += 1
        nU = np.empty(live, np.int64)
        nV = np.empty(live, np.int64)
        nC = np.empty(live)
        noid = np.empty(live, np.int64)
        nref = np.empty(live, np.int64)
        j = 0
        for i in range(len(U)):
            if V[i] != r and comp[U[i]] != comp[V[i]]:
                nU[j] = comp[U[i]]
                nV[j] = comp[V[i]]
                nC[j] = C[i] - bc[V[i]]
                noid[j] = oid[i]
                nref[j] = i
                j += 1
        st_V.append(V)
        st_best.append(best)
        st_ref.append(ref)
        st_r.append(r)
        U, V, C, oid, ref = nU, nV, nC, noid, nref
        r = comp[r]
        N = nxt
    for lvl in range(len(st_V) - 1, -1, -1):
        V_lo = st_V[lvl]
        parent = st_best[lvl].copy()
        for e in sel:
            lo = ref[e]
            parent[V_lo[lo]] = lo
        r_lo = st_r[lvl]
        sel = np.empty(len(parent) - 1, np.int64)
        j = 0
        for v in range(len(parent)):
            if v != r_lo:
                sel[j] = parent[v]
                j += 1
        ref = st_ref[lvl]
    out = np.empty(len(sel), np.int64)
    for j in range(len(sel)):
        out[j] = ref[sel[j]]
    out.sort()
    return out


def _chu_liu_edmonds_py(
    n: int, root: int, arcs: list[tuple[int, int]], cost: list[float]
) -> list[int]:
    # Each level: edges as (u, v, c, ref, oid); ref indexes the level below.
    cur = [(u, v, float(c), i, i) for i, ((u, v), c) in enumerate(zip(arcs, cost)) if u != v]
    N, r = n, root
    levels = []
    while True:
        best = [-1] * N
        bkey: list[tuple[float, int]] = [(math.inf, 0)] * N
        for idx, (u, v, c, _, oid) in enumerate(cur):
            if v != r and (c, oid) < bkey[v]:
                bkey[v] = (c, oid)
                best[v] = idx
        if any(best[v] < 0 for v in range(N) if v != r):
            raise NoArborescenceError("no arborescence exists")
        comp = [-1] * N
        mark = [-1] * N
        ncomp = 0
        cyc = [False] * N
        for v0 in range(N):
            x = v0
            while x != r and mark[x] < 0 and comp[x] < 0:
                mark[x] = v0
                x = cur[best[x]][0]
            if x != r and mark[x] == v0 and comp[x] < 0:
                # Found a new cycle through x.
                y = x
                while True:
                    comp[y] = ncomp
                    cyc[y] = True
                    y = cur[best[y]][0]
                    if y == x:
                        break
                ncomp += 1
        if ncomp == 0:
            chosen = [best[v] for v in range(N) if v != r]
            break
        for v in range(N):
            if comp[v] < 0:
                comp[v] = ncomp
                ncomp += 1
        nxt = []
        for idx, (u, v, c, _, oid) in enumerate(cur):
            cu, cv = comp[u], comp[v]
            if cu != cv and v != r:
                nxt.append((cu, cv, c - bkey[v][0], idx, oid))
        levels.append((cur, best, comp, cyc, N, r))
        cur, N, r = nxt, ncomp, comp[r]
    # Expand from the top level down.
    sel = chosen
    for cur_lo, best, comp, cyc, N_lo, r_lo in reversed(levels):
        parent = [-1] * N_lo
        for e in sel:
            lo = cur[e][3]
            parent[cur_lo[lo][1]] = lo
        for v in range(N_lo):
            if v != r_lo and parent[v] < 0:
                parent[v] = best[v]
        sel = [parent[v] for v in range(N_lo) if v != r_lo]
        cur = cur_lo
    return sorted(cur[e][4] for e in sel)


@dataclass
class Packing:
    """Uniform fractional packing: each listed arborescence has weight 1/iterations."""

    arborescences: list[Arborescence]
    iterations: int
    gamma_bar: float
    usage: list[int]
    weights: list[int]
    lower_bound: float = 0.0
    bound_iterations: int = 0
    certified: bool = False
    truncated: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def uniform_weight(self) -> float:
        return 1.0 / self.iterations

    @property
    def value(self) -> float:
        """Packing value 1/gamma_bar."""
        return 1.0 / self.gamma_bar

    def exact_gamma_bar(self) -> Fraction:
        return max(
            Fraction(u, self.iterations * w) for u, w in zip(self.usage, self.weights)
        )

    def scaled_loads(self) -> list[Fraction]:
        """Per-edge load of the packing scaled by 1/gamma_bar, recomputed from the trees."""
        usage = [0] * len(self.weights)
        for A in self.arborescences:
            for e in A.edge_ids():
                usage[e] += 1
        g = max(Fraction(u, self.iterations * w) for u, w in zip(usage, self.weights))
        return [Fraction(u, self.iterations * w) / g for u, w in zip(usage, self.weights)]


def iteration_bound(m: int, eps: float, w_min: int, gamma_hat: float) -> int:
    omega = 1.0 / w_min
    denom = gamma_hat * ((1 + eps) * math.log1p(eps) - eps)
    return max(1, math.ceil((1 + eps) * omega * math.log(max(m, 2)) / denom))


def pack_arborescences(
    G: WeightedDigraph,
    s: int,
    eps: float = 0.1,
    max_iters: int | None = None,
    gamma_hat: float | None = None,
    early_stop: bool = True,
    on_limit: str = "raise",
) -> Packing:
    """Young's multiplicative-weights packing of s-arborescences.

    Edge j starts with y_j = 1. Each round takes the arborescence of least
    total cost y_j / w_j and multiplies y_j by (1 + eps * w_min / w_j) on its
    edges. The average of all rounds is returned. With ``early_stop`` the
    loop ends once the max load is within (1 + eps) of the best dual lower
    bound seen so far. If ``max_iters`` is hit first, ``on_limit`` selects
    between raising and returning the truncated packing.
    """
    if G.m == 0:
        raise NoArborescenceError("graph has no edges")
    if not 0 < eps < 1:
        raise GraphError("eps must lie in (0, 1)")
    if not all(reachable_from(G, s)):
        raise NoArborescenceError("no arborescence exists: some vertex is unreachable")
    w = [e[2] for e in G.edges]
    w_min = min(w)
    if gamma_hat is None:
        from .maxflow import reference_s_mincut

        gamma_hat = 1.0 / reference_s_mincut(G, s).value
    N = iteration_bound(G.m, eps, w_min, gamma_hat)
    arcs = [(u, v) for u, v, _ in G.edges]
    U = np.array([a[0] for a in arcs], dtype=np.int64)
    V = np.array([a[1] for a in arcs], dtype=np.int64)
    warr = np.array(w, dtype=float)
    mult = 1.0 + eps * w_min / warr
    y = np.ones(G.m)
    usage = [0] * G.m
    trees: list[Arborescence] = []
    max_ratio = 0.0
    lb = 0.0
    certified = truncated = False
    t = 0
    while t < N:
        if max_iters is not None and t >= max_iters:
            if on_limit == "raise":
                raise PackingLimitError(
                    f"packing needs up to {N} iterations, limit is {max_iters}"
                )
            truncated = True
            break
        costs = y / warr
        ids = chu_liu_edmonds_arrays(G.n, s, U, V, costs)
        t += 1
        idx = np.fromiter(ids, dtype=np.int64, count=len(ids))
        lb = max(lb, float(costs[idx].sum() / y.sum()))
        pe: list[tuple[int, int, int] | None] = [None] * G.n
        for e in ids:
            u, v = arcs[e]
            pe[v] = (u, v, e)
            usage[e] += 1
            r = usage[e] / w[e]
            if r > max_ratio:
                max_ratio = r
        trees.append(Arborescence(s, tuple(pe)))
        y[idx] *= mult[idx]
        ymax = y.max()
        if ymax > 1e200:
            y /= ymax
        if early_stop and max_ratio / t <= (1 + eps) * lb:
            certified = True
            break
    return Packing(
        arborescences=trees,
        iterations=t,
        gamma_bar=max_ratio / t,
        usage=usage,
        weights=w,
        lower_bound=lb,
        bound_iterations=N,
        certified=certified,
        truncated=truncated,
    )


def sample_arborescences(
    P: Packing, count: int, rng: np.random.Generator
) -> list[Arborescence]:
    if not P.arborescences:
        raise GraphError("empty packing")
    if count <= 0:
        return []
    picks = rng.integers(0, len(P.arborescences), size=count)
    return [P.arborescences[i] for i in picks.tolist()]


def crossing_count(T: Arborescence, S: Iterable[int]) -> int:
    """Tree edges leaving S; S must contain the root."""
    Sset = set(S)
    if T.root not in Sset:
        raise GraphError("S must contain the root")
    return sum(1 for pe in T.parent_edge if pe is not None and pe[0] in Sset and pe[1] not in Sset)
