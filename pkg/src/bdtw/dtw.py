"""Exact squared dynamic time warping between binary strings.

Three routes to the same integer:

* :func:`dtw_sq_dp` -- the textbook O(m*n) dynamic program, optionally
  recovering a cost-attaining warping path.
* :func:`dtw_sq_condensed` -- constant-time closed form when the string
  with the longer condensation is itself condensed.
* :func:`dtw_sq_blocks` -- block-profile algorithm: when both strings
  start and end with the same symbols, the squared distance equals a
  minimum 1-separated sum over the inner block sizes of the string with
  more blocks; mismatched boundary symbols are peeled off by a case
  split on which first/last block to misalign (at most four leaf
  selection problems).

:func:`dtw_all_condensed` answers the distance from one string to every
alternating string in a length range at once, sharing four selection
tables across all queries.

All public values are squared distances, which are integers on binary
inputs; square roots are never taken.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import INT_INF, dtw_last_col, dtw_table
from .core import BitsLike, BlockProfile, ContractError, as_profile, bits
from .mss import mss_solve, mss_table_kernel


@dataclass(frozen=True)
class DtwResult:
    """Squared distance plus, when requested, one optimal warping path."""

    squared_distance: int
    path: tuple[tuple[int, int], ...] | None = None


def dtw_sq_dp(x: BitsLike, y: BitsLike, want_path: bool = False) -> DtwResult:
    """Squared dtw via the standard dynamic program.

    With ``want_path`` a cost-attaining path is recovered; ties are
    broken deterministically by preferring the diagonal, then the
    vertical, then the horizontal predecessor.
    """
    bx = bits(x)
    by = bits(y)
    if not want_path:
        col = dtw_last_col(bx, by)
        return DtwResult(int(col[-1]))
    D = dtw_table(bx, by)
    return DtwResult(int(D[-1, -1]), _backtrack(D, bx, by))


def _backtrack(D, x, y) -> tuple[tuple[int, int], ...]:
    i, j = x.shape[0], y.shape[0]
    rev = [(i, j)]
    while i > 1 or j > 1:
        cost = 0 if x[i - 1] == y[j - 1] else 1
        target = D[i, j] - cost
        if i > 1 and j > 1 and D[i - 1, j - 1] == target:
            i, j = i - 1, j - 1
        elif i > 1 and D[i - 1, j] == target:
            i -= 1
        elif j > 1 and D[i, j - 1] == target:
            j -= 1
        else:  # unreachable on a correct table
            raise AssertionError("inconsistent dtw table during backtracking")
        rev.append((i, j))
    rev.reverse()
    return tuple(rev)


def dtw_sq_condensed(x: BitsLike | BlockProfile, y: BitsLike | BlockProfile) -> int:
    """Closed-form squared dtw for condensed ``x`` against arbitrary ``y``.

    Requires ``x`` condensed (every block of size 1) and the block count
    of ``y`` at most ``|x|``.  With matching first symbols the value is
    ceil((|x| - blocks(y)) / 2); with mismatched first symbols and
    ``|x|`` strictly longer it is 1 + floor((|x| - blocks(y)) / 2).
    When the lengths tie, the value depends on y's block sizes: a lone
    opposite block costs its full size, otherwise the cheapest of y's
    two boundary blocks or one inner block (at a +1 premium) must be
    misaligned.
    """
    px = as_profile(x)
    py = as_profile(y)
    if px.sizes.max() != 1:
        raise ContractError("x must be condensed (all blocks of size 1)")
    L = px.count
    p = py.count
    if p > L:
        raise ContractError(f"blocks(y) = {p} exceeds |x| = {L}")
    if px.first == py.first:
        return (L - p + 1) // 2
    if L > p:
        return 1 + (L - p) // 2
    if p == 1:
        return int(py.sizes[0])
    cheapest = min(int(py.sizes[0]), int(py.sizes[-1]))
    if p > 2:
        cheapest = min(cheapest, 1 + int(py.sizes[1:-1].min()))
    return 1 + cheapest


def dtw_sq_blocks(x: BitsLike | BlockProfile, y: BitsLike | BlockProfile) -> int:
    """Exact squared dtw from the two block profiles.

    Matching endpoint symbols reduce directly to a min 1-separated sum
    over the inner blocks of the string with more blocks; a mismatched
    first (resp. last) symbol is resolved by taking the cheaper of
    misaligning the first (last) block of either string.  Each peel
    fixes one mismatch, so at most four selection problems are solved.
    """
    px = as_profile(x)
    py = as_profile(y)
    return _blocks_rec(px.sizes, px.first, 0, px.count,
                       py.sizes, py.first, 0, py.count)


def _blocks_rec(ax, fx, xlo, xhi, ay, fy, ylo, yhi) -> int:
    lx = xhi - xlo
    ly = yhi - ylo
    if lx < ly:  # keep x the side with more blocks
        ax, fx, xlo, xhi, ay, fy, ylo, yhi = ay, fy, ylo, yhi, ax, fx, xlo, xhi
        lx, ly = ly, lx
    if fx != fy:
        if lx == 1:  # both single blocks of opposite symbols
            return int(max(ax[xlo], ay[ylo]))
        drop_x = int(ax[xlo]) + _blocks_rec(ax, fx ^ 1, xlo + 1, xhi, ay, fy, ylo, yhi)
        if ly == 1:
            return drop_x
        drop_y = int(ay[ylo]) + _blocks_rec(ax, fx, xlo, xhi, ay, fy ^ 1, ylo + 1, yhi)
        return min(drop_x, drop_y)
    last_x = fx ^ ((lx - 1) & 1)
    last_y = fy ^ ((ly - 1) & 1)
    if last_x != last_y:
        drop_x = int(ax[xhi - 1]) + _blocks_rec(ax, fx, xlo, xhi - 1, ay, fy, ylo, yhi)
        if ly == 1:
            return drop_x
        drop_y = int(ay[yhi - 1]) + _blocks_rec(ax, fx, xlo, xhi, ay, fy, ylo, yhi - 1)
        return min(drop_x, drop_y)
    r = (lx - ly) // 2
    if r == 0:
        return 0
    return mss_solve(ax[xlo + 1:xhi - 1], r)


def dtw_all_condensed(s: BitsLike | BlockProfile, min_len: int) -> dict[tuple[int, int], int]:
    """Squared dtw from ``s`` to every alternating string in a length range.

    Returns ``{(length, first_symbol): distance}`` for every length in
    ``min_len .. blocks(s)`` and both start symbols.  Four selection
    tables -- over the inner blocks of ``s`` with each boundary block
    optionally removed -- answer all queries; each query resolves the
    endpoint mismatches by the same case split as
    :func:`dtw_sq_blocks`, reading table rows instead of re-solving.
    """
    prof = as_profile(s)
    ell = prof.count
    if not 1 <= min_len <= ell:
        raise ContractError(
            f"min_len must be in [1, {ell}] for a string with {ell} blocks, got {min_len}")
    sizes = prof.sizes
    f = prof.first
    # +1 on top of ceil((ell - min_len) / 2): peeling both candidate
    # endpoints raises the selection count by one in the even case.
    r_max = (ell - min_len) // 2 + 1
    rows: dict[tuple[int, int], np.ndarray] = {}
    for da in (0, 1):
        for db in (0, 1):
            sub = sizes[da + 1:ell - db - 1]
            if sub.shape[0]:
                rows[(da, db)] = mss_table_kernel(sub, np.int64(r_max))[-1]
            else:
                row = np.full(r_max + 1, INT_INF, np.int64)
                row[0] = 0
                rows[(da, db)] = row

    def solve(da: int, db: int, j: int) -> int:
        val = int(rows[(da, db)][j])
        if val >= INT_INF:
            raise AssertionError("infeasible selection query in case analysis")
        return val

    def query(da: int, db: int, L: int, c: int) -> int:
        # s-view: blocks sizes[da : ell-db], first symbol f ^ da;
        # candidate: alternating, length L, first symbol c.
        lx = ell - da - db
        fx = f ^ da
        if lx >= L:
            if fx != c:
                if lx == 1:
                    return int(sizes[da])  # max(block, 1)
                drop_s = int(sizes[da]) + query(da + 1, db, L, c)
                if L == 1:
                    return drop_s
                return min(drop_s, 1 + query(da, db, L - 1, c ^ 1))
            if (fx ^ ((lx - 1) & 1)) != (c ^ ((L - 1) & 1)):
                drop_s = int(sizes[ell - 1 - db]) + query(da, db + 1, L, c)
                if L == 1:
                    return drop_s
                return min(drop_s, 1 + query(da, db, L - 1, c))
            return solve(da, db, (lx - L) // 2)
        # candidate strictly longer; its blocks are all unit-size
        if fx != c:
            drop_c = 1 + query(da, db, L - 1, c ^ 1)
            if lx == 1:
                return drop_c
            return min(drop_c, int(sizes[da]) + query(da + 1, db, L, c))
        if (fx ^ ((lx - 1) & 1)) != (c ^ ((L - 1) & 1)):
            drop_c = 1 + query(da, db, L - 1, c)
            if lx == 1:
                return drop_c
            return min(drop_c, int(sizes[ell - 1 - db]) + query(da, db + 1, L, c))
        return (L - lx) // 2

    return {(L, c): query(0, 0, L, c)
            for L in range(min_len, ell + 1) for c in (0, 1)}
