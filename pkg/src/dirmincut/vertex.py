"""Approximate rooted and global minimum vertex cuts.

A vertex cut is a tri-partition (L, X, R) with the root in L, R nonempty,
and no arc from L to R; its value is the weight of X. Equivalently it is
the in-neighbourhood of a sink component R that avoids the root's
out-neighbours.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from .config import DEFAULT_CONSTANTS, SparsifyConstants
from .graph import (
    GraphError,
    VertexCutResult,
    VertexWeightedDigraph,
    WeightedDigraph,
    build_graph,
    build_vertex_graph,
    in_neighborhood,
    reverse_vertex_graph,
    vertex_in_cut_value,
)
from .maxflow import INF, call_count, max_flow_network
from .oracles import degenerate_vertex_cut
from .rng import child, make_rng


def _ln(n: int) -> float:
    return math.log(max(n, 2))


def candidate_sinks(G: VertexWeightedDigraph, s: int | None = None) -> list[int]:
    """V' = V minus the root and its out-neighbours."""
    s = G.root if s is None else s
    blocked = set(G.succ[s]) | {s}
    return [v for v in range(G.n) if v not in blocked]


def cut_from_sink(G: VertexWeightedDigraph, T) -> VertexCutResult:
    T = frozenset(T)
    X = in_neighborhood(G, T)
    return VertexCutResult(X, T, sum(G.vertex_weight[v] for v in X))


@dataclass(frozen=True)
class VertexSparsified:
    """Sparsified vertex graph; real vertices keep their ids.

    ``aux_of[v]`` is the auxiliary vertex on the path root -> a_v -> v.
    ``tau`` maps sparsified weights back: a weight x here is x * tau in G.
    """

    graph: VertexWeightedDigraph
    tau: Fraction
    aux_of: dict[int, int]
    aux_units: int
    n_real: int
    params: dict = field(default_factory=dict)


def vertex_tau(
    n: int, kappa: int, k: int, eps: float, constants: SparsifyConstants = DEFAULT_CONSTANTS
) -> Fraction:
    """Grid size for vertex weights.

    Below 1 the grid becomes 1/M with M = ceil(2k / (eps kappa)), which keeps
    integer weights exact and leaves the auxiliary weight at least one unit.
    """
    raw = constants.c_tau * eps * eps * kappa / (k * _ln(n))
    if raw >= 1:
        return Fraction(math.floor(raw))
    return Fraction(1, max(1, math.ceil(2 * k / (eps * kappa))))


def vertex_sparsify(
    G: VertexWeightedDigraph,
    s: int,
    kappa: int,
    k: int,
    eps: float,
    rng: np.random.Generator,
    constants: SparsifyConstants = DEFAULT_CONSTANTS,
) -> VertexSparsified:
    """Round, pad with auxiliary vertices, rescale, truncate, cap in-degrees.

    Steps, all in units of tau:
      1. round every non-root weight to a multiple of tau (unbiased up/down);
      2. add a_v with weight floor(eps kappa / 2k) units on a path root -> a_v -> v;
      3. drop out-arcs of zero-weight vertices;
      4. truncate weights at the cap;
      5. vertices with in-degree >= Delta get a single in-arc from the root.
    """
    if not 0 < eps < 1:
        raise GraphError("eps must lie in (0, 1)")
    if kappa < 1 or k < 1:
        raise GraphError("kappa and k must be at least 1")
    n = G.n
    tau = vertex_tau(n, kappa, k, eps, constants)
    ln = _ln(n)
    w = np.array(G.vertex_weight, dtype=np.int64)
    if tau.denominator == 1 and tau > 1:
        t = tau.numerator
        base = (w // t) * t
        up = rng.random(n) < (w - base) / t
        units = (base // t + up).astype(np.int64)
    else:
        units = w * tau.denominator
    units[s] = G.vertex_weight[s]
    aux_units = math.floor(Fraction(eps).limit_denominator(10**9) * kappa / (2 * k * tau))
    # The cap must stay above 2 kappa and Delta above any small sink's in-degree;
    # the fixed constants alone do not guarantee either.
    kt = kappa / tau
    cap = max(math.ceil(constants.c_w * k * ln / eps**2), math.ceil(2 * kt))
    delta = max(
        math.ceil(constants.c_delta * k * ln / eps**2),
        math.floor(k + (1 + 2 * eps) * kt) + 1,
    )
    weights = [int(x) for x in units]
    arcs = list(G.arcs)
    aux_of: dict[int, int] = {}
    for v in range(n):
        if v == s:
            continue
        a = n + len(aux_of)
        aux_of[v] = a
        weights.append(aux_units)
        arcs.append((s, a))
        arcs.append((a, v))
    N = len(weights)
    arcs = [(u, v) for u, v in arcs if u == s or weights[u] > 0]
    weights = [w_ if v == s else min(w_, cap) for v, w_ in enumerate(weights)]
    indeg = [0] * N
    for _, v in arcs:
        indeg[v] += 1
    heavy = {v for v in range(N) if v != s and indeg[v] >= delta}
    if heavy:
        arcs = [(u, v) for u, v in arcs if v not in heavy] + [(s, v) for v in sorted(heavy)]
    H = build_vertex_graph(N, s, arcs, weights)
    params = {
        "kappa": kappa,
        "k": k,
        "eps": eps,
        "cap": cap,
        "delta": delta,
        "contracted": sorted(heavy),
    }
    return VertexSparsified(H, tau, aux_of, aux_units, n, params)


def sparsifier_violations(sp: VertexSparsified) -> list[str]:
    H = sp.graph
    s = H.root
    out = []
    for v, w in enumerate(H.vertex_weight):
        if v != s and not 0 <= w <= sp.params["cap"]:
            out.append(f"weight of {v} outside [0, cap]")
        if v != s and w == 0 and H.succ[v]:
            out.append(f"zero-weight vertex {v} has out-arcs")
        if len(H.pred[v]) > sp.params["delta"]:
            out.append(f"in-degree of {v} above Delta")
    succ_root = set(H.succ[s])
    if any(a not in succ_root for a in sp.aux_of.values()):
        out.append("auxiliary vertex not adjacent from root")
    return out


def split_graph(G: VertexWeightedDigraph) -> WeightedDigraph:
    """v_in = 2v, v_out = 2v + 1; the root's internal edge has INF capacity.

    The graph root is the root's out-node.
    """
    edges = []
    w = [INF if v == G.root else G.vertex_weight[v] for v in range(G.n)]
    for v in range(G.n):
        edges.append((2 * v, 2 * v + 1, w[v]))
    for u, v in G.arcs:
        edges.append((2 * u + 1, 2 * v, w[u]))
    return build_graph(2 * G.n, 2 * G.root + 1, edges, check_total=False)


def min_vertex_st_cut(
    G: VertexWeightedDigraph, s: int, t: int, split: WeightedDigraph | None = None
) -> VertexCutResult | None:
    """Minimum (s, t) vertex cut by max-flow on the split graph; None if s -> t."""
    if t in G.succ[s] or t == s:
        return None
    if G.root != s:
        G = G.with_root(s)
        split = None
    S = split if split is not None else split_graph(G)
    value, net = max_flow_network(S.n, S.edges, 2 * s + 1, 2 * t)
    reach = net.reaches_forward(2 * s + 1)
    T = frozenset(v for v in range(G.n) if v != s and not reach[2 * v])
    res = cut_from_sink(G, T)
    assert res.value == value, "split-graph cut does not match flow value"
    return res


def _tri_from_reverse(G: VertexWeightedDigraph, r: VertexCutResult) -> VertexCutResult:
    """Map a cut of reverse(G) back to G: the sink becomes the root side."""
    T = frozenset(range(G.n)) - r.sink_component - r.separator
    return replace(r, sink_component=T)


def big_sink_vertex_cut(
    G: VertexWeightedDigraph,
    s: int,
    kappa: int,
    k: int,
    eps: float,
    rng: np.random.Generator,
    exhaustive: bool = False,
) -> VertexCutResult | None:
    """Sparsify once, then exact (s, t) vertex cuts in the sparsifier for sampled t."""
    Vp = candidate_sinks(G, s)
    if not Vp:
        return None
    sp = vertex_sparsify(G, s, kappa, k, eps, child(rng))
    H = sp.graph
    S = split_graph(H)
    if exhaustive:
        sinks = Vp
    else:
        count = math.ceil(len(Vp) / k * 2 * _ln(G.n))
        sinks = rng.choice(np.array(Vp), size=count, replace=True).tolist()
    best: VertexCutResult | None = None
    for t in sinks:
        r = min_vertex_st_cut(H, s, t, S)
        if r is None:
            continue
        T = frozenset(v for v in r.sink_component if v < sp.n_real)
        if not T:
            continue
        cand = cut_from_sink(G, T)
        if best is None or cand.value < best.value:
            best = cand
    return best


def small_sink_vertex_cut(
    G: VertexWeightedDigraph,
    s: int,
    kappa: int,
    k: int,
    eps: float,
    rng: np.random.Generator,
    exhaustive: bool = False,
) -> VertexCutResult | None:
    """Local flow queries from sampled sinks, for sink-size guesses 1, 2, ..., 2k."""
    from .localflow import LocalCutStructure

    Vp = candidate_sinks(G, s)
    if not Vp:
        return None
    best: VertexCutResult | None = None
    ell = 1
    while ell <= 2 * k:
        ds = LocalCutStructure(G, s, kappa, ell, eps, child(rng))
        if exhaustive:
            sinks = Vp
        else:
            count = math.ceil(len(Vp) / ell * 2 * _ln(G.n))
            sinks = rng.choice(np.array(Vp), size=count, replace=True).tolist()
        for t in sinks:
            ans = ds.query(t)
            if ans is None:
                continue
            cand = cut_from_sink(G, ans)
            if best is None or cand.value < best.value:
                best = cand
        ell *= 2
    return best


def approx_rooted_vertex_cut(
    G: VertexWeightedDigraph,
    s: int | None = None,
    eps: float = 0.25,
    rng: np.random.Generator | None = None,
    exhaustive: bool = False,
) -> VertexCutResult:
    """(1 + eps)-approximate minimum vertex cut separating some sink from s.

    Guesses kappa and k range over powers of two; each pair runs the local
    small-sink search when k <= ceil(eps sqrt n) and the sparsified big-sink
    search otherwise. If every vertex is adjacent from s the degenerate
    answer is returned, flagged.
    """
    s = G.root if s is None else s
    if G.n < 2:
        raise GraphError("need at least two vertices")
    if not 0 < eps < 1:
        raise GraphError("eps must lie in (0, 1)")
    if G.root != s:
        G = G.with_root(s)
    rng = rng if rng is not None else make_rng()
    start = call_count()
    Vp = candidate_sinks(G, s)
    if not Vp:
        return replace(degenerate_vertex_cut(G, s), maxflow_calls=0)
    W = sum(w for v, w in enumerate(G.vertex_weight) if v != s)
    # The in-neighbourhood of all of V' is a valid separator.
    best: VertexCutResult | None = cut_from_sink(G, Vp)
    small_limit = math.ceil(eps * math.sqrt(G.n))
    kappa = 1
    while kappa <= max(1, 2 * W):
        if best is not None and kappa > 2 * best.value and best.value > 0:
            break
        if best is not None and best.value == 0:
            break
        k = 1
        while True:
            if k <= small_limit:
                r = small_sink_vertex_cut(G, s, kappa, k, eps, child(rng), exhaustive)
            else:
                r = big_sink_vertex_cut(G, s, kappa, k, eps, child(rng), exhaustive)
            if r is not None and (best is None or r.value < best.value):
                best = r
            if k >= len(Vp):
                break
            k *= 2
        kappa *= 2
    assert best is not None
    return replace(best, maxflow_calls=call_count() - start)


def approx_global_vertex_cut(
    G: VertexWeightedDigraph,
    eps: float = 0.25,
    rng: np.random.Generator | None = None,
    max_roots: int | None = None,
) -> VertexCutResult:
    """Best rooted cut over roots sampled in proportion to vertex weight.

    Each sampled root is tried in G and in reverse(G), so the root may land
    on either side of the optimal separator. The sample count
    ceil(W / (W - kappa_hat) * 2 ln n) is recomputed as the best value
    kappa_hat improves.
    """
    if G.n < 2:
        raise GraphError("need at least two vertices")
    rng = rng if rng is not None else make_rng()
    start = call_count()
    n = G.n
    W = G.total_weight()
    cap = max_roots if max_roots is not None else 4 * n
    Grev = reverse_vertex_graph(G)
    w = np.array(G.vertex_weight, dtype=float)
    probs = w / w.sum() if w.sum() > 0 else np.full(n, 1.0 / n)
    best: VertexCutResult | None = None

    def run_root(r: int) -> None:
        nonlocal best
        for rev in (False, True):
            H = (Grev if rev else G).with_root(r)
            if not candidate_sinks(H, r):
                continue
            res = approx_rooted_vertex_cut(H, r, eps, child(rng))
            if rev:
                res = _tri_from_reverse(G, res)
            if best is None or res.value < best.value:
                best = res

    run_root(int(np.argmax(G.vertex_weight)) if n else 0)
    sampled = 1
    while sampled < cap:
        kh = best.value if best is not None else W
        if W - kh > 0:
            need = math.ceil(W / (W - kh) * 2 * _ln(n))
        else:
            need = cap
        if sampled >= min(need, cap):
            break
        if W - kh > 0:
            r = int(rng.choice(n, p=probs))
        else:
            r = int(rng.integers(n))
        run_root(r)
        sampled += 1
    if best is None:
        best = degenerate_vertex_cut(G, None)
    return replace(best, maxflow_calls=call_count() - start)
