"""Partial sparsification of rooted edge cuts.

Two constructions are provided. ``rounding`` rounds weights to multiples of
a grid size tau, adds a root star and rescales so that every weight is an
integer at least 1. ``binomial`` resamples each weight from a binomial
distribution and overlays a heavier star. Both finish by contracting
high in-degree vertices into the root. Only cuts with small sink sides are
preserved approximately; large sink sides are padded by the star.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .config import DEFAULT_CONSTANTS, SparsifyConstants
from .graph import GraphError, WeightedDigraph, build_graph, contract_into_root

VARIANTS = ("rounding", "binomial")


@dataclass(frozen=True)
class SparsifiedGraph:
    graph: WeightedDigraph
    scale: Fraction  # multiply sparsified cut values by this to compare with G
    vertex_map: tuple[int, ...]
    variant: str
    params: dict = field(default_factory=dict)

    @property
    def contracted(self) -> frozenset[int]:
        r = self.vertex_map[self.params.get("root", 0)]
        return frozenset(
            v for v, nv in enumerate(self.vertex_map) if nv == r and v != self.params.get("root", 0)
        )


def _check_params(lam: int, k: int, eps: float) -> None:
    if not 0 < eps < 1:
        raise GraphError(f"eps must lie in (0, 1), got {eps}")
    if lam < 1:
        raise GraphError(f"lambda estimate must be at least 1, got {lam}")
    if k < 1:
        raise GraphError(f"k must be at least 1, got {k}")


def _ln(n: int) -> float:
    return math.log(max(n, 2))


def rounding_tau(
    n: int, lam: int, k: int, eps: float, constants: SparsifyConstants = DEFAULT_CONSTANTS
) -> int:
    """Grid size: the largest divisor of lam not above c_tau eps^2 lam / (k ln n)."""
    raw = math.floor(constants.c_tau * eps * eps * lam / (k * _ln(n)))
    if raw <= 1:
        return 1
    for d in range(min(raw, lam), 0, -1):
        if lam % d == 0:
            return d
    return 1


def randomized_round(weights: np.ndarray, tau: int, rng: np.random.Generator) -> np.ndarray:
    """Round each weight to a neighbouring multiple of tau, unbiasedly."""
    if tau == 1:
        return weights.copy()
    base = (weights // tau) * tau
    frac = weights - base
    up = rng.random(len(weights)) < frac / tau
    return base + np.where(up, tau, 0)


def skeleton_sparsify(
    G: WeightedDigraph,
    s: int,
    lam: int,
    k: int,
    eps: float,
    rng: np.random.Generator,
    constants: SparsifyConstants = DEFAULT_CONSTANTS,
) -> tuple[WeightedDigraph, int]:
    """Round, add the root star, and divide by tau. Returns (graph, tau)."""
    _check_params(lam, k, eps)
    tau = rounding_tau(G.n, lam, k, eps, constants)
    w = np.array([e[2] for e in G.edges], dtype=np.int64)
    rounded = randomized_round(w, tau, rng) // tau
    edges = [
        (u, v, int(x)) for (u, v, _), x in zip(G.edges, rounded.tolist()) if x > 0
    ]
    star = star_units(lam, k, eps, tau)
    if star > 0:
        edges.extend((s, v, star) for v in range(G.n) if v != s)
    return build_graph(G.n, s, edges), tau


def star_units(lam: int, k: int, eps: float, tau: int) -> int:
    """Star edge weight after rescaling: eps*lam/(2k) rounded to the tau grid."""
    return math.floor(eps * lam / (2 * k * tau) + 0.5)


def contract_high_indegree(
    G1: WeightedDigraph, s: int, threshold: int, strict: bool = False
) -> tuple[WeightedDigraph, tuple[int, ...]]:
    """Contract every non-root vertex with in-degree >= threshold into s.

    With ``strict`` the test is in-degree > threshold. In-degrees are read
    once from G1; contraction never raises a non-root in-degree, so one pass
    reaches the fixpoint.
    """
    if threshold < 1:
        raise GraphError("threshold must be at least 1")
    X = [
        v
        for v in range(G1.n)
        if v != s
        and (G1.in_degree(v) > threshold if strict else G1.in_degree(v) >= threshold)
    ]
    H, vm = contract_into_root(G1.with_root(s) if G1.root != s else G1, X)
    return H, tuple(vm)


def rounding_threshold(
    n: int, k: int, eps: float, constants: SparsifyConstants = DEFAULT_CONSTANTS
) -> int:
    return math.ceil(constants.c_delta * k * _ln(n) / (eps * eps))


def binomial_alpha(n: int, eps: float) -> int:
    eps1 = eps / 2
    return math.ceil(6 * _ln(n) / (eps1 * eps1))


def binomial_weights(G: WeightedDigraph, p: Fraction, rng: np.random.Generator) -> np.ndarray:
    """Draw Binomial(w(e), p) independently for every edge, in edge order."""
    w = np.array([e[2] for e in G.edges], dtype=np.int64)
    if p == 1 or len(w) == 0:
        return w.copy()
    return rng.binomial(w, float(p))


def binomial_sparsify(
    G: WeightedDigraph,
    s: int,
    lam: int,
    k: int,
    eps: float,
    rng: np.random.Generator,
) -> SparsifiedGraph:
    _check_params(lam, k, eps)
    eps1 = eps / 2
    params = {
        "root": s,
        "lambda": lam,
        "k": k,
        "eps": eps,
        "eps_prime": eps1,
        "theta": eps1**3 / 12,
        "indegree_cap": 3 * k,
    }
    if lam <= 2 * k:
        sampled = G if G.root == s else G.with_root(s)
        p = Fraction(1)
        params.update(p=p, alpha=0)
    else:
        p = Fraction(k, lam)
        draws = binomial_weights(G, p, rng).tolist()
        alpha = binomial_alpha(G.n, eps)
        params.update(p=p, alpha=alpha)
        edges = []
        starred = [False] * G.n
        for (u, v, _), x in zip(G.edges, draws):
            if u == s and not starred[v]:
                x += alpha
                starred[v] = True
            if x > 0:
                edges.append((u, v, x))
        edges.extend((s, v, alpha) for v in range(G.n) if v != s and not starred[v])
        sampled = build_graph(G.n, s, edges)
    H, vm = contract_high_indegree(sampled, s, 3 * k, strict=True)
    return SparsifiedGraph(H, 1 / p, vm, "binomial", params)


def partial_sparsify(
    G: WeightedDigraph,
    s: int,
    lam: int,
    k: int,
    eps: float,
    rng: np.random.Generator,
    variant: str = "rounding",
    constants: SparsifyConstants = DEFAULT_CONSTANTS,
) -> SparsifiedGraph:
    if variant == "binomial":
        return binomial_sparsify(G, s, lam, k, eps, rng)
    if variant != "rounding":
        raise GraphError(f"unknown sparsifier variant {variant!r}")
    G1, tau = skeleton_sparsify(G, s, lam, k, eps, rng, constants)
    threshold = rounding_threshold(G.n, k, eps, constants)
    H, vm = contract_high_indegree(G1, s, threshold)
    params = {
        "root": s,
        "lambda": lam,
        "k": k,
        "eps": eps,
        "tau": tau,
        "star": star_units(lam, k, eps, tau),
        "indegree_cap": threshold,
    }
    return SparsifiedGraph(H, Fraction(tau), vm, "rounding", params)


def structural_violations(sp: SparsifiedGraph) -> list[str]:
    """Deterministic properties every sparsifier output must satisfy."""
    H = sp.graph
    out = []
    if sp.vertex_map[sp.params["root"]] != H.root:
        out.append("root not preserved")
    if any(w < 1 for _, _, w in H.edges):
        out.append("edge weight below 1")
    if any(v == H.root for _, v, _ in H.edges):
        out.append("edge headed to root")
    cap = sp.params["indegree_cap"]
    if sp.variant == "rounding":
        # Survivors had in-degree < cap before contraction, which only removes in-edges.
        if any(H.in_degree(v) >= cap for v in range(H.n) if v != H.root):
            out.append("in-degree cap exceeded")
    else:
        if any(H.in_degree(v) > cap for v in range(H.n) if v != H.root):
            out.append("in-degree cap exceeded")
    if H.m > H.n * cap:
        out.append("edge count above n * cap")
    return out
