"""Exact solvers for the min 1-separated sum selection problem.

Given positive integers b_1..b_m and a count r, pick r entries whose
indices are pairwise at least 2 apart so that their sum is minimal.
This is the number problem underlying block-based squared-dtw: the
selected entries are the block sizes of the misaligned blocks.

:func:`mss_solve` runs the O(m*r) dynamic program; :func:`mss_table`
exposes its full table (needed when one instance must answer queries
for every r' <= r); :func:`mss_brute_force` enumerates all valid
selections and is the testing oracle.
"""

from __future__ import annotations

import numpy as np

from ._kernels import INT_INF, mss_table_kernel
from .core import ContractError

INFEASIBLE = INT_INF

MAX_BRUTE_FORCE_M = 24


class InfeasibleError(ValueError):
    """No r pairwise non-adjacent indices exist (r > ceil(m/2))."""


def _as_values(values) -> np.ndarray:
    arr = np.asarray(values, dtype=np.int64)
    if arr.ndim != 1:
        raise ContractError("values must be one-dimensional")
    if arr.size and arr.min() < 1:
        raise ContractError("all values must be positive integers")
    return arr


def max_selectable(m: int) -> int:
    """Largest feasible r for a sequence of length m."""
    return (m + 1) // 2


def mss_table(values, r: int) -> np.ndarray:
    """Full DP table M with shape (m, r+1).

    M[i, j] is the minimum 1-separated sum of j entries chosen from
    values[0..i]; cells where the prefix cannot host j such entries hold
    the sentinel :data:`INFEASIBLE`.
    """
    v = _as_values(values)
    if r < 0:
        raise ContractError(f"r must be >= 0, got {r}")
    return mss_table_kernel(v, np.int64(r))


def mss_solve(values, r: int) -> int:
    """Minimum 1-separated sum of r entries of ``values``.

    Raises :class:`InfeasibleError` when r > ceil(m/2); r = 0 is always
    feasible (including for an empty sequence) with sum 0.
    """
    v = _as_values(values)
    if r < 0:
        raise ContractError(f"r must be >= 0, got {r}")
    if r == 0:
        return 0
    m = v.shape[0]
    if r > max_selectable(m):
        raise InfeasibleError(f"cannot pick {r} non-adjacent entries out of {m}")
    M = mss_table_kernel(v, np.int64(r))
    val = int(M[m - 1, r])
    if val >= INT_INF:
        raise AssertionError("feasible query hit an infeasible table cell")
    return val


def mss_brute_force(values, r: int) -> int:
    """Exhaustive minimum over all valid selections (testing oracle).

    Guarded to m <= MAX_BRUTE_FORCE_M; enumerates every index set with
    pairwise gaps >= 2 and returns the smallest sum.
    """
    v = [int(x) for x in _as_values(values)]
    m = len(v)
    if m > MAX_BRUTE_FORCE_M:
        raise ContractError(f"brute force guarded to m <= {MAX_BRUTE_FORCE_M}, got {m}")
    if r < 0:
        raise ContractError(f"r must be >= 0, got {r}")
    if r == 0:
        return 0
    if r > max_selectable(m):
        raise InfeasibleError(f"cannot pick {r} non-adjacent entries out of {m}")

    best = None

    def rec(start: int, need: int, acc: int) -> None:
        nonlocal best
        if need == 0:
            if best is None or acc < best:
                best = acc
            return
        # last admissible start leaves room for the remaining need-1 picks
        for i in range(start, m - 2 * (need - 1)):
            rec(i + 2, need - 1, acc + v[i])

    rec(0, r, 0)
    assert best is not None
    return best
