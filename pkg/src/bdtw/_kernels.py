"""Hot numeric kernels: DTW dynamic programs and the 1-separated-sum table.

Two interchangeable backends provide the same functions:

* ``numba`` (default when importable) -- the scalar-loop implementations
  below compiled with ``@njit``.
* ``numpy`` -- vectorized fallbacks (anti-diagonal sweeps for the DTW
  tables, row-sliced updates for the selection table).

Selection is controlled by the ``BDTW_BACKEND`` environment variable
(``numba`` or ``numpy``), read once at import time.  ``BACKEND`` reports
the active choice.  Both implementations stay importable under their
private names so tests and benchmarks can compare them directly.

All kernels work on 1-D arrays: bit vectors are ``uint8`` with values in
{0, 1}, block sizes are ``int64``.  ``INT_INF`` marks unreachable /
infeasible table cells; it is large enough that adding string lengths to
it cannot overflow ``int64``.
"""

from __future__ import annotations

import os
import warnings

import numpy as np

INT_INF = 1 << 62


# ---------------------------------------------------------------------------
# Scalar-loop implementations (compiled under the numba backend).

def _dtw_last_col_loops(x, y):
    """out[i-1] = squared dtw between x[1..i] and all of y. O(n) memory."""
    m = x.shape[0]
    n = y.shape[0]
    prev = np.empty(n + 1, np.int64)
    cur = np.empty(n + 1, np.int64)
    prev[0] = 0
    for j in range(1, n + 1):
        prev[j] = INT_INF
    out = np.empty(m, np.int64)
    for i in range(m):
        cur[0] = INT_INF
        xi = x[i]
        for j in range(1, n + 1):
            best = prev[j - 1]
            if prev[j] < best:
                best = prev[j]
            if cur[j - 1] < best:
                best = cur[j - 1]
            if xi == y[j - 1]:
                cur[j] = best
            else:
                cur[j] = best + 1
        out[i] = cur[n]
        tmp = prev
        prev = cur
        cur = tmp
    return out


def _dtw_table_loops(x, y):
    """Full (m+1) x (n+1) accumulated-cost table, INF-bordered."""
    m = x.shape[0]
    n = y.shape[0]
    D = np.empty((m + 1, n + 1), np.int64)
    D[0, 0] = 0
    for j in range(1, n + 1):
        D[0, j] = INT_INF
    for i in range(1, m + 1):
        D[i, 0] = INT_INF
        xi = x[i - 1]
        for j in range(1, n + 1):
            best = D[i - 1, j - 1]
            if D[i - 1, j] < best:
                best = D[i - 1, j]
            if D[i, j - 1] < best:
                best = D[i, j - 1]
            if xi == y[j - 1]:
                D[i, j] = best
            else:
                D[i, j] = best + 1
    return D


def _dtw_sq_batch_loops(Z, lens, y):
    """Squared dtw of each padded row Z[t, :lens[t]] against y."""
    num = Z.shape[0]
    n = y.shape[0]
    out = np.empty(num, np.int64)
    prev = np.empty(n + 1, np.int64)
    cur = np.empty(n + 1, np.int64)
    for t in range(num):
        m = lens[t]
        prev[0] = 0
        for j in range(1, n + 1):
            prev[j] = INT_INF
        for i in range(m):
            cur[0] = INT_INF
            xi = Z[t, i]
            for j in range(1, n + 1):
                best = prev[j - 1]
                if prev[j] < best:
                    best = prev[j]
                if cur[j - 1] < best:
                    best = cur[j - 1]
                if xi == y[j - 1]:
                    cur[j] = best
                else:
                    cur[j] = best + 1
            tmp = prev
            prev = cur
            cur = tmp
        out[t] = prev[n]
    return out


def _mss_table_loops(values, r):
    """Min 1-separated sum table M[i, j] over prefixes values[:i+1].

    M[i, j] = cheapest way to pick j pairwise non-adjacent entries from
    values[0..i]; infeasible cells (j too large for the prefix) stay at
    INT_INF.
    """
    m = values.shape[0]
    M = np.full((m, r + 1), INT_INF, np.int64)
    if m == 0:
        return M
    for i in range(m):
        M[i, 0] = 0
    if r >= 1:
        best = values[0]
        for i in range(m):
            if values[i] < best:
                best = values[i]
            M[i, 1] = best
    for i in range(2, m):
        jmax = min(r, (i + 2) // 2)
        for j in range(2, jmax + 1):
            take = values[i] + M[i - 2, j - 1]
            skip = M[i - 1, j]
            M[i, j] = take if take < skip else skip
    return M


# ---------------------------------------------------------------------------
# Pure-numpy fallbacks.

def _gather_diag(diag, lo, ii):
    # diag holds cells of one anti-diagonal indexed i - lo; out-of-range -> INF
    pos = ii - lo
    vals = np.full(ii.shape[0], INT_INF, np.int64)
    ok = (pos >= 0) & (pos < diag.shape[0])
    vals[ok] = diag[pos[ok]]
    return vals


def _dtw_last_col_numpy(x, y):
    m = x.shape[0]
    n = y.shape[0]
    out = np.empty(m, np.int64)
    diag_pp = np.zeros(1, np.int64)  # k = 0: cell (0, 0)
    lo_pp = 0
    diag_p = np.full(min(m, 1) + 1, INT_INF, np.int64)  # k = 1
    lo_p = 0
    for k in range(2, m + n + 1):
        lo = max(0, k - n)
        hi = min(m, k)
        cur = np.full(hi - lo + 1, INT_INF, np.int64)
        a = max(lo, 1)
        b = min(hi, k - 1)
        if a <= b:
            ii = np.arange(a, b + 1)
            jj = k - ii
            cost = (x[ii - 1] != y[jj - 1]).astype(np.int64)
            up = _gather_diag(diag_p, lo_p, ii - 1)
            left = _gather_diag(diag_p, lo_p, ii)
            diagv = _gather_diag(diag_pp, lo_pp, ii - 1)
            cur[a - lo:b - lo + 1] = cost + np.minimum(np.minimum(up, left), diagv)
        if k >= n + 1:
            i_cap = k - n
            if 1 <= i_cap <= m:
                out[i_cap - 1] = cur[i_cap - lo]
        diag_pp, lo_pp = diag_p, lo_p
        diag_p, lo_p = cur, lo
    return out


def _dtw_table_numpy(x, y):
    m = x.shape[0]
    n = y.shape[0]
    D = np.full((m + 1, n + 1), INT_INF, np.int64)
    D[0, 0] = 0
    for k in range(2, m + n + 1):
        a = max(1, k - n)
        b = min(m, k - 1)
        if a > b:
            continue
        ii = np.arange(a, b + 1)
        jj = k - ii
        cost = (x[ii - 1] != y[jj - 1]).astype(np.int64)
        best = np.minimum(np.minimum(D[ii - 1, jj], D[ii, jj - 1]), D[ii - 1, jj - 1])
        D[ii, jj] = cost + best
    return D


def _dtw_sq_batch_numpy(Z, lens, y):
    out = np.empty(Z.shape[0], np.int64)
    for t in range(Z.shape[0]):
        out[t] = _dtw_last_col_numpy(Z[t, :lens[t]], y)[-1]
    return out


def _mss_table_numpy(values, r):
    m = values.shape[0]
    M = np.full((m, r + 1), INT_INF, np.int64)
    if m == 0:
        return M
    M[:, 0] = 0
    if r >= 1:
        M[:, 1] = np.minimum.accumulate(values)
    for i in range(2, m):
        jmax = min(r, (i + 2) // 2)
        if jmax >= 2:
            take = values[i] + M[i - 2, 1:jmax]
            skip = M[i - 1, 2:jmax + 1]
            M[i, 2:jmax + 1] = np.minimum(take, skip)
    return M


# ---------------------------------------------------------------------------
# Backend selection.

def _select_backend():
    env = os.environ.get("BDTW_BACKEND", "").strip().lower()
    if env not in ("", "numba", "numpy"):
        raise RuntimeError(
            f"BDTW_BACKEND must be 'numba' or 'numpy', got {env!r}")
    if env == "numpy":
        return "numpy", None
    try:
        import numba
    except ImportError:
        if env == "numba":
            raise
        warnings.warn("numba unavailable; using the pure-numpy backend",
                      RuntimeWarning, stacklevel=2)
        return "numpy", None
    return "numba", numba


BACKEND, _numba = _select_backend()

if BACKEND == "numba":
    _jit = _numba.njit(cache=True, nogil=True)
    dtw_last_col = _jit(_dtw_last_col_loops)
    dtw_table = _jit(_dtw_table_loops)
    dtw_sq_batch = _jit(_dtw_sq_batch_loops)
    mss_table_kernel = _jit(_mss_table_loops)
else:
    dtw_last_col = _dtw_last_col_numpy
    dtw_table = _dtw_table_numpy
    dtw_sq_batch = _dtw_sq_batch_numpy
    mss_table_kernel = _mss_table_numpy
