import math
from fractions import Fraction

import pytest
from scipy.stats import binomtest

from dirmincut.graph import GraphError, build_graph
from dirmincut.generators import planted_unbalanced
from dirmincut.rng import make_rng
from dirmincut.verify import (
    TrialReport,
    clopper_pearson,
    concentration_fixture,
    one_respect_meta_trial,
    one_respect_probability_trial,
    run_suite,
    sparsifier_concentration_trial,
)


@pytest.mark.parametrize("x, n", [(0, 10), (3, 10), (10, 10), (97, 100), (500, 1000)])
def test_clopper_pearson_matches_scipy(x, n):
    ci = binomtest(x, n).proportion_ci(0.95, method="exact")
    lo, hi = clopper_pearson(x, n)
    assert math.isclose(lo, ci.low, abs_tol=1e-9)
    assert math.isclose(hi, ci.high, abs_tol=1e-9)


def test_trial_report_bookkeeping():
    r = TrialReport("x")
    for ok in (True, True, False):
        r.record(ok)
    assert (r.trials, r.successes, r.failures) == (3, 2, 1)
    merged = r.merge(TrialReport("x", 2, 2))
    assert merged.trials == 5 and merged.successes == 4
    with pytest.raises(ValueError):
        TrialReport("bad", 1, 2)


def test_concentration_p_one_never_fails():
    G = concentration_fixture()
    rep = sparsifier_concentration_trial(G, 0, {"p": 1, "eps": 0.3}, 50, make_rng(0))
    assert rep.successes == rep.trials == 50


def test_concentration_below_bound():
    G = concentration_fixture()
    rep = sparsifier_concentration_trial(G, 0, {"p": Fraction(1, 2), "eps": 0.3}, 1000, make_rng(1))
    assert rep.bound < 1
    assert rep.failure_upper() < rep.bound


def test_concentration_size_limit():
    with pytest.raises(GraphError):
        sparsifier_concentration_trial(build_graph(11, 0, []), 0, {"p": 1, "eps": 0.3}, 1, make_rng(0))


def test_unique_arborescence_always_respects():
    # A path has one arborescence, and the cut before its last vertex crosses it once.
    G = build_graph(4, 0, [(0, 1, 9), (1, 2, 9), (2, 3, 1), (3, 0, 5)])
    rep = one_respect_probability_trial(G, 0, 1, 0.1, 20, make_rng(0))
    assert rep.successes == 20


def test_premise_violation():
    G = build_graph(3, 0, [(0, 1, 1), (1, 2, 5), (2, 1, 5), (0, 2, 1)])
    with pytest.raises(GraphError):
        one_respect_probability_trial(G, 0, 1, 0.1, 1, make_rng(0))


def test_planted_frequency():
    G, _ = planted_unbalanced(8, 2, make_rng(5))
    rep = one_respect_probability_trial(G, 0, 2, 0.1, 200, make_rng(6))
    assert rep.interval()[0] >= 0.4
    meta = one_respect_meta_trial(G, 0, 2, 0.1, 20, make_rng(7))
    assert meta.successes >= 18


def test_unknown_suite():
    with pytest.raises(GraphError):
        run_suite("nope")


@pytest.mark.parametrize("suite", ["sparsifier", "packing"])
def test_fast_suites_pass(suite):
    assert run_suite(suite).passed
