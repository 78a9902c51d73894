"""Statistical verifiers and oracle sweeps behind ``dirmincut verify``.

Each suite draws its instances from a seeded generator, compares the
algorithms against the brute-force oracles and returns a SuiteReport of
named checks. Every trial gets its own child generator, so trials are
independent of one another and of the order they run in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy.stats import beta

from .config import DEFAULT_SEED, DriverConfig, SparsifyConstants, log_count
from .driver import DriverStats, approx_s_mincut, exact_s_mincut, global_mincut
from .generators import erdos, planted_unbalanced, random_vertex_graph
from .graph import (
    GraphError,
    VertexCutResult,
    VertexWeightedDigraph,
    WeightedDigraph,
    build_graph,
    in_cut_value,
    in_neighborhood,
    vertex_in_cut_value,
)
from .localflow import LocalCutStructure
from .maxflow import reference_s_mincut
from .onerespect import min_one_respecting_cut
from .oracles import (
    all_in_cut_values,
    brute_force_arborescences,
    brute_force_global_mincut,
    brute_force_s_mincut,
    brute_force_vertex_cut,
    brute_force_vertex_st_cut,
    tripartition_vertex_cut,
)
from .packing import (
    crossing_count,
    pack_arborescences,
    sample_arborescences,
    validate_arborescence,
)
from .rng import child, make_rng, split
from .sparsify import (
    binomial_alpha,
    binomial_weights,
    partial_sparsify,
    randomized_round,
    structural_violations,
)
from .vertex import (
    approx_global_vertex_cut,
    approx_rooted_vertex_cut,
    candidate_sinks,
    min_vertex_st_cut,
)

SUITES = ("exact", "approx", "vertex", "sparsifier", "packing")


def clopper_pearson(successes: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    """Exact two-sided binomial confidence interval for a success rate."""
    if trials <= 0:
        return 0.0, 1.0
    a = (1 - confidence) / 2
    lo = 0.0 if successes == 0 else float(beta.ppf(a, successes, trials - successes + 1))
    hi = 1.0 if successes == trials else float(beta.ppf(1 - a, successes + 1, trials - successes))
    return lo, hi


@dataclass
class TrialReport:
    name: str
    trials: int = 0
    successes: int = 0
    values: list = field(default_factory=list)
    confidence: float = 0.95
    bound: float | None = None  # analytic comparison value, when there is one
    details: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not 0 <= self.successes <= self.trials:
            raise ValueError("successes must lie in [0, trials]")

    def record(self, ok: bool, value=None) -> None:
        self.trials += 1
        self.successes += int(bool(ok))
        if value is not None:
            self.values.append(value)

    def merge(self, other: "TrialReport") -> "TrialReport":
        return TrialReport(
            self.name,
            self.trials + other.trials,
            self.successes + other.successes,
            self.values + other.values,
            self.confidence,
            self.bound,
            {**self.details, **other.details},
        )

    @property
    def rate(self) -> float:
        return self.successes / self.trials if self.trials else 0.0

    @property
    def failures(self) -> int:
        return self.trials - self.successes

    def interval(self) -> tuple[float, float]:
        return clopper_pearson(self.successes, self.trials, self.confidence)

    def failure_upper(self) -> float:
        """Upper confidence bound on the failure rate."""
        return 1.0 - self.interval()[0]

    def to_dict(self) -> dict:
        lo, hi = self.interval()
        d = {
            "name": self.name,
            "trials": self.trials,
            "successes": self.successes,
            "rate": round(self.rate, 6),
            "ci_low": round(lo, 6),
            "ci_high": round(hi, 6),
        }
        if self.bound is not None:
            d["bound"] = round(self.bound, 6)
        d.update(self.details)
        return d


@dataclass
class Check:
    name: str
    passed: bool
    report: TrialReport | None = None
    note: str = ""

    def to_dict(self) -> dict:
        d = {"name": self.name, "passed": self.passed}
        if self.report is not None:
            d["report"] = self.report.to_dict()
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class SuiteReport:
    suite: str
    seed: int
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }


def _at_least(report: TrialReport, rate: float) -> bool:
    return report.trials > 0 and report.successes >= math.ceil(rate * report.trials - 1e-9)


def _all(report: TrialReport) -> bool:
    return report.successes == report.trials


# ---------------------------------------------------------------------------
# Instance sweeps


def random_edge_instances(
    count: int, rng: np.random.Generator, n_min: int = 2, n_max: int = 7, max_weight: int = 10
) -> list[WeightedDigraph]:
    out = []
    for r in split(rng, count):
        n = int(r.integers(n_min, n_max + 1))
        p = float(r.uniform(0.25, 0.8))
        out.append(erdos(n, p, max_weight, r))
    return out


def random_vertex_instances(
    count: int, rng: np.random.Generator, n_min: int = 2, n_max: int = 6, max_weight: int = 10
) -> list[VertexWeightedDigraph]:
    out = []
    for r in split(rng, count):
        n = int(r.integers(n_min, n_max + 1))
        p = float(r.uniform(0.25, 0.7))
        out.append(random_vertex_graph(n, p, max_weight, r))
    return out


def _valid_edge_cut(G: WeightedDigraph, s: int, res) -> bool:
    T = res.sink_side
    return bool(T) and s not in T and len(T) < G.n and in_cut_value(G, T) == res.value


# ---------------------------------------------------------------------------
# Suites


def exact_suite(
    seed: int = DEFAULT_SEED, random_trials: int = 500, planted_trials: int = 100
) -> SuiteReport:
    rng = make_rng(seed)
    r_rand, r_plant, r_algo = split(rng, 3)
    cases: list[tuple[WeightedDigraph, int]] = []
    for G in random_edge_instances(random_trials, r_rand):
        cases.append((G, brute_force_s_mincut(G, 0).value))
    for r in split(r_plant, planted_trials):
        n = int(r.integers(8, 65))
        k = int(r.integers(1, 6))
        G, ans = planted_unbalanced(n, k, r)
        cases.append((G, ans.value))
    exh = TrialReport("exhaustive-agreement")
    whp = TrialReport("whp-agreement")
    valid = TrialReport("whp-valid-cuts")
    exh_cfg = DriverConfig(exhaustive=True)
    cfg = DriverConfig()
    for (G, lam), r in zip(cases, split(r_algo, len(cases))):
        a, b = split(r, 2)
        e = exact_s_mincut(G, 0, exh_cfg, a)
        exh.record(e.value == lam and _valid_edge_cut(G, 0, e))
        w = exact_s_mincut(G, 0, cfg, b)
        whp.record(w.value == lam)
        valid.record(_valid_edge_cut(G, 0, w))
    exh.details = {"random": random_trials, "planted": planted_trials}
    return SuiteReport(
        "exact",
        seed,
        [
            Check("exhaustive-agreement", _all(exh), exh),
            Check("whp-agreement", _at_least(whp, 0.99), whp),
            Check("whp-valid-cuts", _all(valid), valid),
        ],
    )


def approx_suite(seed: int = DEFAULT_SEED, trials: int = 300, eps: float = 0.25) -> SuiteReport:
    rng = make_rng(seed)
    r_inst, r_algo = split(rng, 2)
    within = TrialReport("within-factor")
    remeasure = TrialReport("re-measured")
    for G, r in zip(random_edge_instances(trials, r_inst), split(r_algo, trials)):
        lam = brute_force_s_mincut(G, 0).value
        res = approx_s_mincut(G, 0, eps, rng=r)
        within.record(res.value <= (1 + eps) * lam)
        remeasure.record(_valid_edge_cut(G, 0, res))
    return SuiteReport(
        "approx",
        seed,
        [
            Check("within-factor", _at_least(within, 0.95), within),
            Check("re-measured", _all(remeasure), remeasure),
        ],
    )


def _vertex_result_valid(G: VertexWeightedDigraph, s: int | None, res: VertexCutResult) -> bool:
    """Separator weight matches the value and covers every arc into the sink."""
    R = res.sink_component
    X = res.separator
    if not R or R & X:
        return False
    if s is not None and (s in R or s in X):
        return False
    if sum(G.vertex_weight[v] for v in X) != res.value:
        return False
    if res.degenerate:
        return True
    if not in_neighborhood(G, R) <= X:
        return False
    return len(R) + len(X) < G.n


def constrained_vertex_cut(
    G: VertexWeightedDigraph, s: int, t: int, k: int, allowed: set[int]
) -> int | None:
    """Min vertex in-cut over sink sets T with t in T, |T| <= k, T inside ``allowed``."""
    pool = sorted(allowed - {t})
    best = None
    for mask in range(1 << len(pool)):
        T = [t] + [pool[i] for i in range(len(pool)) if mask >> i & 1]
        if len(T) > k:
            continue
        val = vertex_in_cut_value(G, T)
        if best is None or val < best:
            best = val
    return best


def local_query_check(
    G: VertexWeightedDigraph, s: int, kappa: int, k: int, eps: float, rng: np.random.Generator
) -> tuple[int, int, int]:
    """Run every query of one structure. Returns (queries, matches, traversal violations).

    A query matches the constrained brute force when "exceeds" implies every
    admissible sink set of size <= k costs more than kappa, and a returned
    component is admissible, contains t, and costs at most the constrained
    optimum plus eps*kappa/2.
    """
    Vp = candidate_sinks(G, s)
    allowed = set(Vp)
    ds = LocalCutStructure(G, s, kappa, k, eps, rng)
    queries = matches = over = 0
    for t in Vp:
        ans = ds.query(t)
        queries += 1
        if ds.last.max_traversals > ds.traversal_limit:
            over += 1
        best = constrained_vertex_cut(G, s, t, k, allowed)
        if ans is None:
            ok = best is None or best > kappa
        else:
            ok = (
                t in ans
                and ans <= allowed
                and best is not None
                and vertex_in_cut_value(G, ans) <= best + eps * kappa / 2
            )
        matches += int(ok)
    return queries, matches, over


def vertex_suite(seed: int = DEFAULT_SEED, trials: int = 300, eps: float = 0.25) -> SuiteReport:
    rng = make_rng(seed)
    r_inst, r_split, r_local, r_algo = split(rng, 4)
    instances = random_vertex_instances(trials, r_inst)

    st = TrialReport("split-maxflow")
    for G in instances:
        for t in range(1, G.n):
            ref = brute_force_vertex_st_cut(G, 0, t)
            got = min_vertex_st_cut(G, 0, t)
            st.record((ref is None and got is None) or (got is not None and ref == got.value))

    local = TrialReport("local-queries")
    trav = TrialReport("search-length")
    for G, r in zip(random_vertex_instances(trials, r_split, n_min=3), split(r_local, trials)):
        if not candidate_sinks(G, 0):
            continue
        a, b, c = split(r, 3)
        kappa = 1 << int(a.integers(0, 6))
        k = int(b.integers(1, G.n))
        q, m, over = local_query_check(G, 0, kappa, k, eps, c)
        for i in range(q):
            local.record(i < m)
            trav.record(i >= over)

    rooted = TrialReport("rooted-within-factor")
    glob = TrialReport("global-within-factor")
    valid = TrialReport("vertex-cuts-valid")
    for G, r in zip(instances, split(r_algo, trials)):
        a, b = split(r, 2)
        opt_r = tripartition_vertex_cut(G, 0)
        if opt_r is None:
            opt_r = brute_force_vertex_cut(G, 0).value
        res = approx_rooted_vertex_cut(G, 0, eps, a)
        rooted.record(res.value <= (1 + eps) * opt_r)
        opt_g = tripartition_vertex_cut(G, None)
        if opt_g is None:
            opt_g = brute_force_vertex_cut(G, None).value
        gres = approx_global_vertex_cut(G, eps, b)
        glob.record(gres.value <= (1 + eps) * opt_g)
        valid.record(_vertex_result_valid(G, 0, res) and _vertex_result_valid(G, None, gres))

    return SuiteReport(
        "vertex",
        seed,
        [
            Check("split-maxflow", _all(st), st),
            Check("local-queries", _all(local), local),
            Check("search-length", _all(trav), trav),
            Check("rooted-within-factor", _at_least(rooted, 0.90), rooted),
            Check("global-within-factor", _at_least(glob, 0.90), glob),
            Check("vertex-cuts-valid", _all(valid), valid),
        ],
    )


# ---------------------------------------------------------------------------
# Sparsifier statistics


def concentration_fixture() -> WeightedDigraph:
    """Fixed 6-vertex complete digraph with weights in [200, 599]."""
    r = make_rng(6)
    n = 6
    edges = [
        (u, v, int(r.integers(200, 600))) for u in range(n) for v in range(n) if u != v
    ]
    return build_graph(n, 0, edges)


def sparsifier_concentration_trial(
    G: WeightedDigraph, s: int, params: dict, trials: int, rng: np.random.Generator
) -> TrialReport:
    """Two-sided concentration of sampled in-cuts over every sink set.

    ``params`` holds p (sampling probability) and eps; eps' = eps/2 is the
    per-cut tolerance. A trial succeeds when every sink set T keeps its
    sampled in-cut within (1 +- eps') p d(T). The analytic bound is the
    union over T of 2 exp(-p d(T) eps'^2 / 3), capped at 1. Per trial the
    minimum over T of sampled in-cut plus alpha |T| is also compared with
    (1 - eps) p lambda.
    """
    if G.n > 10:
        raise GraphError("concentration trial limited to n <= 10")
    p = Fraction(params["p"])
    eps = float(params["eps"])
    eps1 = eps / 2
    alpha = int(params.get("alpha", binomial_alpha(G.n, eps) if p < 1 else 0))
    masks, exact = all_in_cut_values(G, s)
    exact = exact.astype(float)
    sizes = np.array([bin(int(m)).count("1") for m in masks])
    mean = float(p) * exact
    per_set_bound = np.minimum(1.0, 2 * np.exp(-mean * eps1 * eps1 / 3))
    lam = float(exact.min())
    set_fail = np.zeros(len(masks), dtype=np.int64)
    heads = np.array([v for _, v, _ in G.edges], dtype=np.int64)
    tails = np.array([u for u, _, _ in G.edges], dtype=np.int64)
    crosses = ((masks[:, None] >> heads[None, :]) & 1) & (1 - ((masks[:, None] >> tails[None, :]) & 1))
    report = TrialReport("concentration")
    floor_ok = 0
    for r in split(rng, trials):
        w = binomial_weights(G, p, r).astype(float)
        sampled = crosses @ w
        bad = np.abs(sampled - mean) > eps1 * mean + 1e-9
        set_fail += bad
        ok = not bad.any()
        report.record(ok)
        if ok and (sampled + alpha * sizes).min() >= (1 - eps) * float(p) * lam - 1e-9:
            floor_ok += 1
    report.bound = float(min(1.0, per_set_bound.sum()))
    worst = int(np.argmax(set_fail / np.maximum(per_set_bound, 1e-300)))
    report.details = {
        "p": str(p),
        "eps_prime": eps1,
        "sink_sets": int(len(masks)),
        "floor_ok": floor_ok,
        "worst_set_failures": int(set_fail[worst]),
        "worst_set_bound": round(float(per_set_bound[worst]), 6),
        "sets_over_bound": int(
            sum(
                1
                for f, b in zip(set_fail.tolist(), per_set_bound.tolist())
                # Significant excess: the lower confidence bound already exceeds b.
                if 1 - clopper_pearson(trials - f, trials)[1] > b
            )
        ),
    }
    return report


def rounding_unbiasedness_trial(
    weights: list[int], tau: int, trials: int, rng: np.random.Generator
) -> TrialReport:
    """Per-weight mean of randomized rounding; success = mean within 1% of the weight."""
    w = np.array(weights, dtype=np.int64)
    total = np.zeros(len(w), dtype=np.float64)
    for r in split(rng, trials):
        total += randomized_round(w, tau, r)
    means = total / trials
    report = TrialReport("rounding-unbiased")
    for x, mu in zip(weights, means.tolist()):
        report.record(abs(mu - x) <= 0.01 * x, round(mu, 4))
    return report


def binomial_expectation_trial(
    G: WeightedDigraph, T, p: Fraction, trials: int, rng: np.random.Generator
) -> TrialReport:
    """Mean sampled in-cut of a fixed sink set against p times its exact value."""
    Tset = set(T)
    idx = [i for i, (u, v, _) in enumerate(G.edges) if v in Tset and u not in Tset]
    total = 0.0
    for r in split(rng, trials):
        total += float(binomial_weights(G, p, r)[idx].sum())
    target = float(p) * in_cut_value(G, T)
    mean = total / trials
    report = TrialReport("binomial-mean")
    report.record(abs(mean - target) <= 0.02 * target, round(mean, 4))
    report.details = {"target": target}
    return report


def sparsifier_suite(seed: int = DEFAULT_SEED, trials: int = 1000) -> SuiteReport:
    rng = make_rng(seed)
    r_conc, r_round, r_binom, r_struct = split(rng, 4)
    G = concentration_fixture()
    conc = sparsifier_concentration_trial(G, 0, {"p": Fraction(1, 2), "eps": 0.3}, trials, r_conc)
    conc_ok = conc.failure_upper() < conc.bound and conc.details["sets_over_bound"] == 0
    floor_ok = conc.details["floor_ok"] == conc.successes

    unb = rounding_unbiasedness_trial([37, 101, 250, 513, 1000, 77], 16, 10000, r_round)
    bmean = binomial_expectation_trial(G, [1, 2], Fraction(1, 2), 10000, r_binom)

    struct = TrialReport("structural")
    loose = SparsifyConstants(c_delta=0.5)
    for r in split(r_struct, trials):
        a, b = split(r, 2)
        n = int(a.integers(3, 11))
        H = erdos(n, float(a.uniform(0.3, 0.9)), 50, a)
        lam = 1 << int(a.integers(0, 9))
        k = int(a.integers(1, 4))
        variant = ("rounding", "binomial")[int(a.integers(0, 2))]
        constants = loose if a.random() < 0.5 else SparsifyConstants()
        sp = partial_sparsify(H, 0, lam, k, 0.3, b, variant, constants)
        struct.record(not structural_violations(sp))
    return SuiteReport(
        "sparsifier",
        seed,
        [
            Check("concentration", conc_ok, conc),
            Check("lower-floor", floor_ok, None, f"{conc.details['floor_ok']} of {conc.successes}"),
            Check("rounding-unbiased", _all(unb), unb),
            Check("binomial-mean", _all(bmean), bmean),
            Check("structural", _all(struct), struct),
        ],
    )


# ---------------------------------------------------------------------------
# Packing


def _lambda_bracket(lam: int) -> int:
    return 1 << max(0, (lam - 1).bit_length())


def _is_arborescence(T, G: WeightedDigraph) -> bool:
    try:
        validate_arborescence(T, G)
    except GraphError:
        return False
    return True


def packing_suite(seed: int = DEFAULT_SEED, trials: int = 100, eps: float = 0.1) -> SuiteReport:
    rng = make_rng(seed)
    dual = TrialReport("gamma-bound")
    loads = TrialReport("scaled-loads")
    valid = TrialReport("arborescences-valid")
    for r in split(rng, trials):
        a, b = split(r, 2)
        while True:
            n = int(a.integers(3, 9))
            G = erdos(n, float(a.uniform(0.4, 0.9)), 20, a)
            lam = reference_s_mincut(G, 0).value
            if lam > 0:
                break
        k = int(a.integers(1, 4))
        sp = partial_sparsify(G, 0, _lambda_bracket(lam), k, 0.3, b)
        H = sp.graph
        lam0 = reference_s_mincut(H, H.root).value
        P = pack_arborescences(H, H.root, eps=eps)
        dual.record(P.exact_gamma_bar() <= Fraction(1 + eps).limit_denominator(10**6) / lam0)
        loads.record(max(P.scaled_loads()) <= 1)
        valid.record(all(_is_arborescence(T, H) for T in P.arborescences))
    return SuiteReport(
        "packing",
        seed,
        [
            Check("gamma-bound", _all(dual), dual),
            Check("scaled-loads", _all(loads), loads),
            Check("arborescences-valid", _all(valid), valid),
        ],
    )


SUITE_RUNNERS: dict[str, Callable[[int], SuiteReport]] = {
    "exact": exact_suite,
    "approx": approx_suite,
    "vertex": vertex_suite,
    "sparsifier": sparsifier_suite,
    "packing": packing_suite,
}


def run_suite(name: str, seed: int = DEFAULT_SEED) -> SuiteReport:
    if name not in SUITE_RUNNERS:
        raise GraphError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITE_RUNNERS[name](seed)


# ---------------------------------------------------------------------------
# Checks used by the acceptance tests beyond the CLI suites


def global_sweep(seed: int = DEFAULT_SEED, trials: int = 200) -> TrialReport:
    """global_mincut in exhaustive mode against the bipartition brute force, n <= 6."""
    rng = make_rng(seed)
    r_inst, r_algo = split(rng, 2)
    report = TrialReport("global-agreement")
    cfg = DriverConfig(exhaustive=True)
    for G, r in zip(random_edge_instances(trials, r_inst, n_max=6), split(r_algo, trials)):
        ref = brute_force_global_mincut(G)
        got = global_mincut(G, cfg, r)
        S = got.sink_side
        ok = got.value == ref.value and 0 < len(S) < G.n and in_cut_value(G, S) == got.value
        report.record(ok)
    return report


def one_respect_fixtures(
    count: int, rng: np.random.Generator, n_min: int = 3, n_max: int = 6
) -> list[tuple[WeightedDigraph, object, int]]:
    """(G, tree, lambda) where the brute-force mincut crosses the tree exactly once."""
    out = []
    while len(out) < count:
        r = child(rng)
        n = int(r.integers(n_min, n_max + 1))
        G = erdos(n, float(r.uniform(0.4, 0.9)), 10, r)
        ref = brute_force_s_mincut(G, 0)
        trees = brute_force_arborescences(G, 0) if ref.value > 0 else []
        S = set(range(n)) - ref.sink_side
        good = [T for T in trees if crossing_count(T, S) == 1]
        if not good:
            continue
        out.append((G, good[int(r.integers(len(good)))], ref.value))
    return out


def one_respect_sweep(seed: int = DEFAULT_SEED, trials: int = 500) -> tuple[TrialReport, TrialReport]:
    """Exact value and per-tree flow count of the one-respecting solver."""
    rng = make_rng(seed)
    exact = TrialReport("one-respect-exact")
    calls = TrialReport("one-respect-calls")
    for G, T, lam in one_respect_fixtures(trials, rng):
        res = min_one_respecting_cut(G, 0, T)
        exact.record(res.value == lam and in_cut_value(G, res.sink_side) == res.value)
        calls.record(res.maxflow_calls <= math.floor(math.log2(G.n)) + 1)
    return exact, calls


def _planted_on_sparsifier(G: WeightedDigraph, s: int, k: int, eps: float, r: np.random.Generator):
    ref = brute_force_s_mincut(G, s)
    if len(ref.sink_side) > k:
        raise GraphError(f"planted sink side has {len(ref.sink_side)} > k = {k} vertices")
    sp = partial_sparsify(G, s, _lambda_bracket(max(ref.value, 1)), k, eps, r)
    H = sp.graph
    mapped = {sp.vertex_map[v] for v in ref.sink_side}
    if H.root in mapped:
        return sp, None
    return sp, set(range(H.n)) - mapped


def one_respect_probability_trial(
    G: WeightedDigraph, s: int, k: int, eps: float, trials: int, rng: np.random.Generator
) -> TrialReport:
    """Frequency with which one tree sampled from the packing 1-respects the mincut."""
    report = TrialReport("one-respect-frequency")
    cache: dict = {}
    for r in split(rng, trials):
        a, b = split(r, 2)
        sp, S = _planted_on_sparsifier(G, s, k, eps, a)
        if S is None:
            report.record(False)
            continue
        H = sp.graph
        key = H.edges
        if key not in cache:
            cache[key] = pack_arborescences(H, H.root, eps=eps)
        (T,) = sample_arborescences(cache[key], 1, b)
        report.record(crossing_count(T, S) == 1)
    return report


def one_respect_meta_trial(
    G: WeightedDigraph,
    s: int,
    k: int,
    eps: float,
    meta: int,
    rng: np.random.Generator,
    samples: int | None = None,
) -> TrialReport:
    """Meta-trials in which some of ceil(2 ln n) sampled trees 1-respects the mincut."""
    samples = samples if samples is not None else log_count(G.n)
    report = TrialReport("one-respect-meta")
    report.details = {"samples": samples}
    cache: dict = {}
    for r in split(rng, meta):
        a, b = split(r, 2)
        sp, S = _planted_on_sparsifier(G, s, k, eps, a)
        if S is None:
            report.record(False)
            continue
        H = sp.graph
        if H.edges not in cache:
            cache[H.edges] = pack_arborescences(H, H.root, eps=eps)
        trees = sample_arborescences(cache[H.edges], samples, b)
        report.record(any(crossing_count(T, S) == 1 for T in trees))
    return report


def call_count_check(
    n: int, planted_k: int, rng: np.random.Generator
) -> tuple[bool, dict]:
    """Run the whp driver on a planted instance and compare counters with their bounds."""
    a, b = split(rng, 2)
    G, ans = planted_unbalanced(n, planted_k, a, certify=False)
    stats = DriverStats()
    cfg = DriverConfig()
    res = exact_s_mincut(G, 0, cfg, b, stats)
    k = stats.k
    balanced_bound = math.ceil((n / k) * 2 * math.log(n))
    per_guess_bound = stats.trees_per_guess * (math.floor(math.log2(n)) + 1)
    worst = max((c for _, c in stats.unbalanced_calls), default=0)
    ok = stats.balanced_calls <= balanced_bound and worst <= per_guess_bound
    return ok, {
        "n": n,
        "k": k,
        "value": res.value,
        "planted": ans.value,
        "balanced_calls": stats.balanced_calls,
        "balanced_bound": balanced_bound,
        "unbalanced_worst": worst,
        "unbalanced_bound": per_guess_bound,
        "guesses": len(stats.unbalanced_calls),
    }
