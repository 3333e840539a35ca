import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bdtw.core import ContractError, condense, to_text
from bdtw.data import gen_random
from bdtw.dtw import dtw_sq_dp
from bdtw.mean import (candidate_bounds, center, mean_baseline,
                       mean_exhaustive, mean_fast, mean_three_matched,
                       mean_two, optima_texts, weighted_mean)

TIGHT_UPPER = ["000", "111"]
TIGHT_LOWER = ["0", "0", "0", "101", "101", "010", "010"]


def test_candidate_bounds_examples():
    b = candidate_bounds(TIGHT_UPPER)
    assert (b.mu, b.m, b.lower, b.upper) == (1, 1, 1, 2)
    b = candidate_bounds(TIGHT_LOWER)
    assert (b.mu, b.m, b.lower, b.upper) == (3, 3, 1, 4)
    b = candidate_bounds(["00110"])
    assert b.mu == b.m == b.nu == 3


def test_mean_fast_tight_instances():
    res = mean_fast(TIGHT_UPPER)
    assert optima_texts(res) == ["01", "10"]
    assert res.objective == 2
    res = mean_fast(TIGHT_LOWER)
    assert optima_texts(res) == ["0"]
    assert res.objective == 6


def test_mean_fast_single_string():
    res = mean_fast(["0011010"])
    assert optima_texts(res) == [to_text(condense("0011010"))]
    assert res.objective == 0


def test_mean_fast_identical_condensations_returns_unique_mean():
    res = mean_fast(["0011", "01", "000111"])
    assert optima_texts(res) == ["01"]
    assert res.objective == 0


def test_landscape_covers_exactly_the_window():
    for strings in (TIGHT_UPPER, TIGHT_LOWER, ["0110", "10"]):
        res = mean_fast(strings)
        b = candidate_bounds(strings)
        assert len(res.landscape) == 2 * (b.upper - b.lower + 1)
        assert min(res.landscape.values()) == res.objective
        argmins = sorted((L, c) for (L, c), v in res.landscape.items()
                         if v == res.objective)
        assert [(z.shape[0], int(z[0])) for z in res.optima] == argmins


def test_mean_baseline_examples():
    res = mean_baseline(TIGHT_UPPER)
    assert (optima_texts(res), res.objective) == (["01", "10"], 2)
    res = mean_baseline(["0101"])
    assert (optima_texts(res), res.objective) == (["0101"], 0)
    res = mean_baseline(TIGHT_LOWER)
    assert (optima_texts(res), res.objective) == (["0"], 6)


def test_mean_exhaustive_examples():
    assert mean_exhaustive(TIGHT_UPPER, 4).objective == 2
    res = mean_exhaustive(["0"], 3)
    assert res.objective == 0 and "0" in optima_texts(res)
    res = mean_exhaustive(["010", "010", "01110001110"], 8)
    assert res.objective == 2
    assert "01010" in optima_texts(res)
    # third input condenses to 01010 itself, so only the first string costs
    res = mean_exhaustive(["010", "01010", "01110001110"], 8)
    assert res.objective == 1
    assert "01010" in optima_texts(res)


def test_mean_exhaustive_guard():
    with pytest.raises(ContractError):
        mean_exhaustive(["0"], 15)
    with pytest.raises(ContractError):
        mean_exhaustive(["01"] * 100, 14)


def test_mean_two_examples():
    res = mean_two("00", "0101")
    assert (optima_texts(res), res.objective) == (["0101"], 2)
    res = mean_two("01", "0011")
    assert (optima_texts(res), res.objective) == (["01"], 0)
    res = mean_two("1", "10")
    assert (optima_texts(res), res.objective) == (["10"], 1)


def test_mean_two_equal_condensation_lengths_uses_full_window():
    # the two inputs condense to single symbols, yet the means are longer
    res = mean_two("000", "111")
    assert (optima_texts(res), res.objective) == (["01", "10"], 2)


def test_mean_three_matched_examples():
    res = mean_three_matched("0", "0", "0")
    assert (optima_texts(res), res.objective) == (["0"], 0)
    res = mean_three_matched("010", "010", "01110001110")
    assert (optima_texts(res), res.objective) == (["01010"], 2)
    # greedy count 3 but capped at (l3 - l2) / 2 = 1
    res = mean_three_matched("010", "01010", "0101010")
    assert (optima_texts(res), res.objective) == (["01010"], 2)


def test_mean_three_matched_rejects_mismatched_endpoints():
    with pytest.raises(ContractError):
        mean_three_matched("01", "010", "0110")


def test_weighted_mean_examples():
    res = weighted_mean(TIGHT_UPPER, [1, 1])
    assert (optima_texts(res), res.objective) == (["01", "10"], 2)
    res = weighted_mean(TIGHT_UPPER, [1, 0])
    assert res.objective == 0 and optima_texts(res) == ["0"]
    res = weighted_mean(["0", "101"], [3, 1])
    assert res.objective == 2 and optima_texts(res) == ["0"]


def test_weighted_mean_validates_weights():
    with pytest.raises(ContractError):
        weighted_mean(TIGHT_UPPER, [0, 0])
    with pytest.raises(ContractError):
        weighted_mean(TIGHT_UPPER, [1, -1])
    with pytest.raises(ContractError):
        weighted_mean(TIGHT_UPPER, [1])


def test_weighted_mean_scaling_invariance():
    rng = np.random.default_rng(17)
    for _ in range(30):
        k = int(rng.integers(1, 5))
        strings = [gen_random(int(rng.integers(1, 12)), 0.5,
                              int(rng.integers(0, 2**31))) for _ in range(k)]
        weights = [Fraction(int(rng.integers(0, 5))) for _ in range(k)]
        if not any(weights):
            weights[0] = Fraction(1)
        base = weighted_mean(strings, weights)
        scaled = weighted_mean(strings, [w * Fraction(7, 3) for w in weights])
        assert optima_texts(base) == optima_texts(scaled)
        assert scaled.objective == base.objective * Fraction(7, 3)


def test_center_examples():
    res = center(TIGHT_UPPER)
    assert (optima_texts(res), res.objective) == (["01", "10"], 1)
    res = center(["001101"])
    assert (optima_texts(res), res.objective) == (["0101"], 0)
    res = center(["0", "101"])
    assert res.objective == 1 and "01" in optima_texts(res)


def test_center_matches_brute_force_over_candidates():
    rng = np.random.default_rng(23)
    for _ in range(40):
        k = int(rng.integers(1, 5))
        strings = [gen_random(int(rng.integers(1, 10)), 0.5,
                              int(rng.integers(0, 2**31))) for _ in range(k)]
        res = center(strings)
        # independent check: exhaustive max-objective over all strings of
        # length <= n + 1 via the dtw dynamic program
        n = max(s.shape[0] for s in strings)
        best = None
        for L in range(1, n + 2):
            for combo in itertools.product((0, 1), repeat=L):
                z = np.array(combo, np.uint8)
                val = max(dtw_sq_dp(z, s).squared_distance for s in strings)
                best = val if best is None else min(best, val)
        assert res.objective == best


@given(st.data())
@settings(max_examples=60)
def test_fast_baseline_exhaustive_agree(data):
    k = data.draw(st.integers(1, 5))
    n = data.draw(st.integers(1, 9))
    sigma = data.draw(st.sampled_from([0.1, 0.3, 0.5, 0.8, 1.0]))
    seed = data.draw(st.integers(0, 2**31))
    strings = [gen_random(n, sigma, seed + t) for t in range(k)]
    fast = mean_fast(strings)
    base = mean_baseline(strings)
    exh = mean_exhaustive(strings, n + 1)
    assert fast.objective == base.objective == exh.objective
    assert optima_texts(fast) == optima_texts(base)


def test_objective_is_integer_for_unweighted():
    for strings in (TIGHT_UPPER, TIGHT_LOWER):
        for res in (mean_fast(strings), mean_baseline(strings)):
            assert isinstance(res.objective, int)


def test_optima_lengths_respect_bounds():
    rng = np.random.default_rng(31)
    for _ in range(50):
        k = int(rng.integers(1, 6))
        strings = [gen_random(int(rng.integers(1, 14)), 0.4,
                              int(rng.integers(0, 2**31))) for _ in range(k)]
        b = candidate_bounds(strings)
        for res in (mean_fast(strings), mean_baseline(strings)):
            for z in res.optima:
                assert max(1, b.mu - 2) <= z.shape[0] <= b.m + 1
