"""Exact means, weighted means, and centers under squared dtw.

A mean of strings s_1..s_k minimizes F(z) = sum_i dtw(s_i, z)^2; a
center minimizes the maximum instead.  A condensed optimum always
exists, and its length is pinned to a small window around the input
condensation lengths: [max(1, mu - 2), m + 1] for the unweighted sum,
where mu is the median and m the maximum condensation length (the
weighted and center variants use the minimum-based window
[max(1, nu - 2), m + 1]).  Every algorithm here enumerates condensed
candidates (length, first symbol) over such a window:

* :func:`mean_fast` scores candidates from block profiles only --
  closed form when the candidate is at least as long as the input's
  condensation, shared selection tables otherwise.
* :func:`mean_baseline` runs one full dynamic program per (input,
  start symbol) and reads every candidate prefix off its last column.
* :func:`mean_exhaustive` minimizes F over *all* binary strings up to a
  length cap; it is the ground-truth oracle.
* :func:`mean_two` / :func:`mean_three_matched` are the linear-time
  special cases for two strings, and for three strings sharing first
  and last symbols.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._kernels import dtw_last_col, dtw_sq_batch
from .core import (BitsLike, BlockProfile, ContractError, as_profile, bits,
                   condensed_string, to_text)
from .dtw import dtw_all_condensed, dtw_sq_blocks, dtw_sq_condensed

EXHAUSTIVE_MAX_LEN = 14
EXHAUSTIVE_WORK_CAP = 1 << 20  # bound on k * 2**max_len


@dataclass(frozen=True)
class MeanResult:
    """All condensed optima, the optimal objective, and the landscape.

    ``landscape`` maps every enumerated candidate ``(length,
    first_symbol)`` to its objective value; ``optima`` are exactly its
    argmins, ordered by (length, first symbol with 0 before 1).
    """

    optima: tuple[np.ndarray, ...]
    objective: int | Fraction
    landscape: dict[tuple[int, int], int | Fraction]


@dataclass(frozen=True)
class CandidateBounds:
    """Window of condensed candidate lengths that must contain an optimum."""

    mu: int     # median condensation length
    m: int      # maximum condensation length
    nu: int     # minimum condensation length
    lower: int  # max(1, mu - 2)
    upper: int  # m + 1


def candidate_bounds(strings: list[BitsLike | BlockProfile]) -> CandidateBounds:
    profiles = [as_profile(s) for s in strings]
    if not profiles:
        raise ContractError("need at least one input string")
    return _bounds(profiles)


def _bounds(profiles: list[BlockProfile]) -> CandidateBounds:
    ells = sorted(p.count for p in profiles)
    k = len(ells)
    mu = ells[(k + 1) // 2 - 1]
    return CandidateBounds(mu=mu, m=ells[-1], nu=ells[0],
                           lower=max(1, mu - 2), upper=ells[-1] + 1)


def _profiles(strings) -> list[BlockProfile]:
    profiles = [as_profile(s) for s in strings]
    if not profiles:
        raise ContractError("need at least one input string")
    return profiles


def _distance_grid(prof: BlockProfile, lower: int, upper: int) -> np.ndarray:
    """Squared distances from ``prof`` to every candidate; shape (2, W).

    Row c holds distances to the alternating strings starting with c,
    columns run over lengths lower..upper.  Lengths up to the input's
    block count come from one shared-table sweep; strictly longer
    candidates use the constant-time closed form (the candidate side is
    condensed and longer, so its value is block-size independent).
    """
    ell = prof.count
    width = upper - lower + 1
    grid = np.empty((2, width), np.int64)
    if lower <= ell:
        vec = dtw_all_condensed(prof, lower)
        for L in range(lower, min(upper, ell) + 1):
            grid[0, L - lower] = vec[(L, 0)]
            grid[1, L - lower] = vec[(L, 1)]
    for L in range(max(lower, ell + 1), upper + 1):
        d = L - ell
        grid[prof.first, L - lower] = (d + 1) // 2
        grid[1 - prof.first, L - lower] = 1 + d // 2
    return grid


def _collect(total, lower: int, upper: int) -> MeanResult:
    """Argmin scan over a (2, width) objective grid in canonical order."""
    landscape = {}
    best = None
    for L in range(lower, upper + 1):
        for c in (0, 1):
            val = total[c][L - lower] if isinstance(total, list) else total[c, L - lower]
            val = val if isinstance(val, Fraction) else int(val)
            landscape[(L, c)] = val
            if best is None or val < best:
                best = val
    optima = tuple(condensed_string(c, L)
                   for (L, c), val in landscape.items() if val == best)
    return MeanResult(optima, best, landscape)


def mean_fast(strings: list[BitsLike | BlockProfile]) -> MeanResult:
    """Exact mean via candidate enumeration over the median-based window."""
    profiles = _profiles(strings)
    b = _bounds(profiles)
    width = b.upper - b.lower + 1
    total = np.zeros((2, width), np.int64)
    for prof in profiles:
        total += _distance_grid(prof, b.lower, b.upper)
    return _collect(total, b.lower, b.upper)


def mean_baseline(strings: list[BitsLike]) -> MeanResult:
    """Exact mean via full dynamic programs against two alternating strings.

    Candidates are all condensed strings of length at most n + 1 (n the
    maximum input length); they are exactly the prefixes of the two
    alternating strings of length n + 1, so one table per (input, start
    symbol) yields every candidate's distance from its last column.
    """
    arrays = [bits(s) for s in strings]
    if not arrays:
        raise ContractError("need at least one input string")
    n = max(a.shape[0] for a in arrays)
    total = np.zeros((2, n + 1), np.int64)
    for c in (0, 1):
        z = condensed_string(c, n + 1)
        for a in arrays:
            total[c] += dtw_last_col(z, a)
    return _collect(total, 1, n + 1)


def mean_exhaustive(strings: list[BitsLike], max_len: int) -> MeanResult:
    """Ground-truth oracle: minimize F over every binary string of
    length <= max_len.

    The returned landscape and optima cover the condensed candidates
    only; the objective is the global minimum over all enumerated
    strings, and a condensed candidate always attains it.
    """
    arrays = [bits(s) for s in strings]
    if not arrays:
        raise ContractError("need at least one input string")
    if not 1 <= max_len <= EXHAUSTIVE_MAX_LEN:
        raise ContractError(f"max_len must be in [1, {EXHAUSTIVE_MAX_LEN}]")
    if len(arrays) << max_len > EXHAUSTIVE_WORK_CAP:
        raise ContractError("instance too large for exhaustive enumeration")
    total = sum(1 << L for L in range(1, max_len + 1))
    Z = np.zeros((total, max_len), np.uint8)
    lens = np.empty(total, np.int64)
    offsets = {}
    pos = 0
    for L in range(1, max_len + 1):
        count = 1 << L
        codes = np.arange(count, dtype=np.uint32)
        shifts = np.arange(L - 1, -1, -1, dtype=np.uint32)
        Z[pos:pos + count, :L] = ((codes[:, None] >> shifts[None, :]) & 1).astype(np.uint8)
        lens[pos:pos + count] = L
        offsets[L] = pos
        pos += count
    F = np.zeros(total, np.int64)
    for a in arrays:
        F += dtw_sq_batch(Z, lens, a)
    global_min = int(F.min())

    landscape = {}
    for L in range(1, max_len + 1):
        for c in (0, 1):
            code = int("".join("01"[b] for b in (condensed_string(c, L))), 2)
            landscape[(L, c)] = int(F[offsets[L] + code])
    best = min(landscape.values())
    if best != global_min:  # a condensed optimum always exists
        raise AssertionError("no condensed string attained the global optimum")
    optima = tuple(condensed_string(c, L)
                   for (L, c), val in landscape.items() if val == best)
    return MeanResult(optima, global_min, landscape)


def mean_two(s1: BitsLike, s2: BitsLike) -> MeanResult:
    """Linear-time mean of two strings.

    With equal condensation lengths the candidate window collapses to a
    constant number of lengths and the generic enumeration runs in
    linear time; otherwise the condensation of the string with more
    blocks is a mean.
    """
    p1 = as_profile(s1)
    p2 = as_profile(s2)
    if p1.count == p2.count:
        return mean_fast([p1, p2])
    longer, shorter = (p1, p2) if p1.count > p2.count else (p2, p1)
    z = longer.condensation()
    objective = dtw_sq_condensed(z, shorter)
    return MeanResult((z,), objective, {(longer.count, longer.first): objective})


def mean_three_matched(s1: BitsLike, s2: BitsLike, s3: BitsLike) -> MeanResult:
    """Linear-time mean of three strings sharing first and last symbols.

    Orders the inputs by condensation length l1 <= l2 <= l3 and greedily
    counts the largest set rho of pairwise non-adjacent size-one inner
    blocks of the longest-condensation string, capped at (l3 - l2) / 2
    since no condensed mean is shorter than l2.  The alternating string
    of length l3 - 2*rho with the shared first symbol is a mean.
    """
    profiles = [as_profile(s) for s in (s1, s2, s3)]
    first = profiles[0].first
    last = profiles[0].last
    if any(p.first != first for p in profiles) or any(p.last != last for p in profiles):
        raise ContractError("all three strings must share first and last symbols")
    profiles.sort(key=lambda p: p.count)
    p_mid, p_top = profiles[1], profiles[2]
    inner = p_top.sizes[1:-1]
    greedy = 0
    prev_taken = False
    for size in inner:
        if size == 1 and not prev_taken:
            greedy += 1
            prev_taken = True
        else:
            prev_taken = False
    rho = min(greedy, (p_top.count - p_mid.count) // 2)
    length = p_top.count - 2 * rho
    z = condensed_string(first, length)
    objective = sum(dtw_sq_blocks(z, p) for p in profiles)
    return MeanResult((z,), objective, {(length, first): objective})


def _parse_weights(weights, k: int) -> list[Fraction]:
    ws = [w if isinstance(w, Fraction) else Fraction(str(w)) for w in weights]
    if len(ws) != k:
        raise ContractError(f"got {len(ws)} weights for {k} strings")
    if any(w < 0 for w in ws):
        raise ContractError("weights must be nonnegative")
    if not any(ws):
        raise ContractError("at least one weight must be positive")
    return ws


def weighted_mean(strings: list[BitsLike | BlockProfile], weights) -> MeanResult:
    """Exact weighted mean: minimize sum_i w_i * dtw(s_i, z)^2.

    Weights are nonnegative rationals, not all zero; arithmetic is done
    in exact fractions.  Candidates span the minimum-based window
    [max(1, nu - 2), m + 1], a safe superset of where any weighted
    optimum can live.
    """
    profiles = _profiles(strings)
    ws = _parse_weights(weights, len(profiles))
    b = _bounds(profiles)
    lower = max(1, b.nu - 2)
    width = b.upper - lower + 1
    total = [[Fraction(0)] * width for _ in (0, 1)]
    for prof, w in zip(profiles, ws):
        grid = _distance_grid(prof, lower, b.upper)
        for c in (0, 1):
            row = total[c]
            for idx in range(width):
                row[idx] += w * int(grid[c, idx])
    return _collect(total, lower, b.upper)


def center(strings: list[BitsLike | BlockProfile]) -> MeanResult:
    """Exact center: minimize max_i dtw(s_i, z)^2 over the same window
    as :func:`weighted_mean`."""
    profiles = _profiles(strings)
    b = _bounds(profiles)
    lower = max(1, b.nu - 2)
    width = b.upper - lower + 1
    total = np.zeros((2, width), np.int64)
    for prof in profiles:
        np.maximum(total, _distance_grid(prof, lower, b.upper), out=total)
    return _collect(total, lower, b.upper)


def optima_texts(result: MeanResult) -> list[str]:
    """The optima rendered as '0'/'1' strings (CLI and test helper)."""
    return [to_text(z) for z in result.optima]
