"""Exact and approximate rooted/global edge mincut drivers.

Rooted mincuts are split by the size of the sink side. When it exceeds k,
sampling random sinks and running one max-flow each finds it. When it is
at most k, the graph is sparsified, an arborescence packing is computed on
the sparsifier, and the one-respecting solver is run on a handful of trees
drawn from the packing. The driver returns the best cut found over both
cases and every lambda guess; each reported value is re-measured in the
input graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .config import DriverConfig
from .graph import (
    CutResult,
    GraphError,
    WeightedDigraph,
    contract_into_root,
    in_cut_value,
    lift_sink_side,
    reachable_from,
    reverse,
)
from .maxflow import call_count, max_flow_network
from .onerespect import min_one_respecting_cut
from .packing import NoArborescenceError, pack_arborescences, sample_arborescences
from .rng import child, make_rng
from .sparsify import SparsifiedGraph, partial_sparsify


@dataclass
class DriverStats:
    """Per-run counters; the CLI and the call-count checks read these."""

    balanced_calls: int = 0
    balanced_samples: int = 0
    unbalanced_calls: list[tuple[int, int]] = field(default_factory=list)  # (lambda, calls)
    lambda_guesses: list[int] = field(default_factory=list)
    k: int = 0
    trees_per_guess: int = 0
    packing_iterations: list[int] = field(default_factory=list)
    sparsifier_edges: list[int] = field(default_factory=list)
    premise_notes: list[str] = field(default_factory=list)


def estimate_lambda_guesses(G: WeightedDigraph, s: int | None = None) -> list[int]:
    """Powers of two 1, 2, ..., 2^ceil(log2 W) where W is the total weight.

    The top guess may exceed W so that lambda = W is still bracketed.
    """
    W = G.total_weight()
    if W < 1:
        return []
    top = max(0, (W - 1).bit_length())
    return [1 << i for i in range(top + 1)]


def _better(a: CutResult | None, b: CutResult | None) -> CutResult | None:
    if a is None:
        return b
    if b is None:
        return a
    return b if b.value < a.value else a


def balanced_sample_count(n: int, k: int, log_factor: float = 2.0) -> int:
    return math.ceil((n / k) * log_factor * math.log(max(n, 2)))


def balanced_case(
    G: WeightedDigraph,
    s: int,
    k: int,
    rng: np.random.Generator,
    exhaustive: bool = False,
    log_factor: float = 2.0,
    stats: DriverStats | None = None,
) -> CutResult:
    """Min over sampled sinks t of the max-flow from s to t.

    Sinks are drawn uniformly from V - s with replacement. ``exhaustive``
    instead visits every vertex once, which makes the result exact.
    """
    if G.n < 2:
        raise GraphError("need at least two vertices")
    others = np.array([v for v in range(G.n) if v != s], dtype=np.int64)
    if exhaustive:
        sinks = others.tolist()
    else:
        count = balanced_sample_count(G.n, k, log_factor)
        sinks = rng.choice(others, size=count, replace=True).tolist()
    best: CutResult | None = None
    for t in sinks:
        value, net = max_flow_network(G.n, G.edges, s, t)
        if best is None or value < best.value:
            side = net.reaches_backward(t)
            best = CutResult(
                frozenset(v for v in range(G.n) if side[v]), value, "input", "balanced"
            )
    if stats is not None:
        stats.balanced_calls += len(sinks)
        stats.balanced_samples += len(sinks)
    assert best is not None
    return replace(best, maxflow_calls=len(sinks))


def _unique_trees(trees):
    seen = set()
    out = []
    for T in trees:
        key = T.edge_ids()
        if key not in seen:
            seen.add(key)
            out.append(T)
    return out


def _pack_and_respect(
    sp: SparsifiedGraph,
    target: WeightedDigraph,
    G: WeightedDigraph,
    cfg: DriverConfig,
    rng: np.random.Generator,
    stats: DriverStats | None,
    origin: str,
    cache: dict | None = None,
) -> tuple[CutResult | None, int]:
    """Pack on the sparsifier, then run the one-respecting solver on ``target``.

    ``target`` shares the sparsifier's vertex ids. The winning sink side is
    lifted to G and its value re-measured there. Packing is deterministic in
    the sparsified graph, so ``cache`` reuses it when two guesses produce the
    same sparsifier.
    """
    H = sp.graph
    if H.n < 2 or H.m == 0 or not all(reachable_from(H, H.root)):
        if stats is not None:
            stats.premise_notes.append(f"{origin}: sparsifier does not span from the root")
        return None, 0
    key = (H.n, H.root, H.edges)
    P = cache.get(key) if cache is not None else None
    if P is None:
        try:
            P = pack_arborescences(
                H,
                H.root,
                eps=cfg.pack_eps,
                max_iters=cfg.pack_max_iters,
                # Min in-weight bounds the sparsified mincut from above.
                gamma_hat=1.0 / min(H.in_weight(v) for v in range(H.n) if v != H.root),
                on_limit="truncate",
            )
        except NoArborescenceError:
            return None, 0
        if cache is not None:
            cache[key] = P
    if stats is not None:
        stats.packing_iterations.append(P.iterations)
    trees = _unique_trees(sample_arborescences(P, cfg.resolve_trees(G.n), rng))
    best: CutResult | None = None
    calls = 0
    for T in trees:
        r = min_one_respecting_cut(target, target.root, T, require_edges=False)
        calls += r.maxflow_calls
        lifted = lift_sink_side(sp.vertex_map, r.sink_side)
        value = in_cut_value(G, lifted)
        best = _better(best, CutResult(lifted, value, "input", origin))
    return best, calls


def unbalanced_case(
    G: WeightedDigraph,
    s: int,
    k: int,
    lam: int,
    cfg: DriverConfig,
    rng: np.random.Generator,
    stats: DriverStats | None = None,
    cache: dict | None = None,
) -> CutResult | None:
    """Sparsify, pack, sample trees, and solve one-respecting cuts.

    The solver runs on G with the sparsifier's contraction applied and its
    original weights. Returns None when the sparsifier leaves no candidate.
    """
    sp = partial_sparsify(
        G, s, lam, k, cfg.inner_eps, child(rng), cfg.variant, cfg.constants
    )
    if stats is not None:
        stats.sparsifier_edges.append(sp.graph.m)
    X = [v for v in range(G.n) if v != s and sp.vertex_map[v] == sp.vertex_map[s]]
    Gc, _ = contract_into_root(G.with_root(s) if G.root != s else G, X)
    best, calls = _pack_and_respect(
        sp, Gc, G, cfg, child(rng), stats, "unbalanced", cache
    )
    if stats is not None:
        stats.unbalanced_calls.append((lam, calls))
    if best is None:
        return None
    return replace(best, maxflow_calls=calls)


def _unreachable_cut(G: WeightedDigraph, s: int) -> CutResult | None:
    reach = reachable_from(G, s)
    if all(reach):
        return None
    return CutResult(
        frozenset(v for v in range(G.n) if not reach[v]), 0, "input", "unreachable"
    )


def exact_s_mincut(
    G: WeightedDigraph,
    s: int | None = None,
    cfg: DriverConfig | None = None,
    rng: np.random.Generator | None = None,
    stats: DriverStats | None = None,
) -> CutResult:
    """Rooted mincut, exact with high probability.

    Lambda guesses above twice the best cut found so far are skipped: a
    bracketing guess for the true mincut never exceeds that.
    """
    cfg = cfg or DriverConfig()
    s = G.root if s is None else s
    if G.n < 2:
        raise GraphError("need at least two vertices")
    rng = rng if rng is not None else make_rng(cfg.seed)
    stats = stats if stats is not None else DriverStats()
    start = call_count()
    trivial = _unreachable_cut(G, s)
    if trivial is not None:
        return trivial
    k = cfg.resolve_k(G.n, G.m)
    stats.k = k
    stats.trees_per_guess = cfg.resolve_trees(G.n)
    best = balanced_case(
        G, s, k, child(rng), cfg.exhaustive, cfg.constants.log_factor, stats
    )
    cache: dict = {}
    for lam in estimate_lambda_guesses(G, s):
        if lam > 2 * best.value:
            break
        stats.lambda_guesses.append(lam)
        best = _better(best, unbalanced_case(G, s, k, lam, cfg, child(rng), stats, cache))
    return replace(best, maxflow_calls=call_count() - start)


def global_mincut(
    G: WeightedDigraph,
    cfg: DriverConfig | None = None,
    rng: np.random.Generator | None = None,
) -> CutResult:
    """Min of the rooted mincut at vertex 0 in G and in reverse(G).

    A rooted cut of reverse(G) with sink side T is the cut of G with sink
    side V - T, so the returned sink side may contain vertex 0.
    """
    cfg = cfg or DriverConfig()
    if G.n < 2:
        raise GraphError("need at least two vertices")
    rng = rng if rng is not None else make_rng(cfg.seed)
    start = call_count()
    fwd = exact_s_mincut(G.with_root(0), 0, cfg, child(rng))
    bwd = exact_s_mincut(reverse(G.with_root(0)), 0, cfg, child(rng))
    if bwd.value < fwd.value:
        side = frozenset(range(G.n)) - bwd.sink_side
        best = CutResult(side, bwd.value, "input", "global-reversed")
    else:
        best = replace(fwd, witness_origin="global-forward")
    return replace(best, maxflow_calls=call_count() - start)


def approx_s_mincut(
    G: WeightedDigraph,
    s: int | None = None,
    eps: float = 0.25,
    cfg: DriverConfig | None = None,
    rng: np.random.Generator | None = None,
    stats: DriverStats | None = None,
) -> CutResult:
    """(1 + eps)-approximate rooted mincut.

    For every power-of-two sink-size guess k and lambda guess, sparsify
    with accuracy eps, then run sampled-sink max-flows and the
    one-respecting pipeline inside the sparsifier. Candidates are compared
    by their value re-measured in G.
    """
    cfg = cfg or DriverConfig()
    if not 0 < eps < 1:
        raise GraphError("eps must lie in (0, 1)")
    s = G.root if s is None else s
    if G.n < 2:
        raise GraphError("need at least two vertices")
    rng = rng if rng is not None else make_rng(cfg.seed)
    stats = stats if stats is not None else DriverStats()
    start = call_count()
    trivial = _unreachable_cut(G, s)
    if trivial is not None:
        return trivial
    if G.root != s:
        G = G.with_root(s)
    best: CutResult | None = None
    k_guesses = []
    k = 1
    while True:
        k_guesses.append(k)
        if k >= G.n - 1:
            break
        k *= 2
    stats.trees_per_guess = cfg.resolve_trees(G.n)
    others = np.array([v for v in range(G.n) if v != s], dtype=np.int64)
    cache: dict = {}
    for lam in estimate_lambda_guesses(G, s):
        if best is not None and lam > 2 * best.value:
            break
        stats.lambda_guesses.append(lam)
        for kg in k_guesses:
            sp = partial_sparsify(G, s, lam, kg, eps, child(rng), cfg.variant, cfg.constants)
            H = sp.graph
            stats.sparsifier_edges.append(H.m)
            if cfg.exhaustive:
                sinks = others.tolist()
            else:
                count = balanced_sample_count(G.n, kg, cfg.constants.log_factor)
                sinks = child(rng).choice(others, size=count, replace=True).tolist()
            for t in sinks:
                ht = sp.vertex_map[t]
                if ht == H.root:
                    continue
                stats.balanced_calls += 1
                _, net = max_flow_network(H.n, H.edges, H.root, ht)
                side = net.reaches_backward(ht)
                lifted = lift_sink_side(sp.vertex_map, [v for v in range(H.n) if side[v]])
                best = _better(best, CutResult(lifted, in_cut_value(G, lifted), "input", "approx-balanced"))
            cand, calls = _pack_and_respect(
                sp, H, G, cfg, child(rng), stats, "approx-unbalanced", cache
            )
            stats.balanced_samples += len(sinks)
            stats.unbalanced_calls.append((lam, calls))
            best = _better(best, cand)
    if best is None:
        # Every sampled sink was contracted; fall back to a single exact flow.
        best = balanced_case(G, s, G.n, child(rng), True, cfg.constants.log_factor)
    return replace(best, maxflow_calls=call_count() - start)
