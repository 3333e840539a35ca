import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bdtw.core import ContractError
from bdtw.mss import (INFEASIBLE, InfeasibleError, MAX_BRUTE_FORCE_M,
                      mss_brute_force, mss_solve, mss_table)


def test_table_base_cases():
    M = mss_table([4, 1, 3], 2)
    assert list(M[:, 0]) == [0, 0, 0]
    assert list(M[:, 1]) == [4, 1, 1]
    assert M[2, 2] == 4 + 3  # first two-pick cell: both outer entries


def test_table_r_zero():
    M = mss_table([5, 3, 7], 0)
    assert M.shape == (3, 1)
    assert list(M[:, 0]) == [0, 0, 0]


def test_solve_examples():
    assert mss_solve([4, 1, 3, 2], 2) == 3
    assert mss_solve([9], 1) == 9
    assert mss_solve([1, 1, 2, 2, 1, 1], 2) == 2
    assert mss_solve([], 0) == 0
    assert mss_solve([3, 1], 0) == 0


def test_solve_infeasible():
    with pytest.raises(InfeasibleError):
        mss_solve([3, 1], 2)
    with pytest.raises(InfeasibleError):
        mss_solve([], 1)


def test_brute_force_examples():
    assert mss_brute_force([1, 1, 2, 2, 1, 1], 2) == 2
    assert mss_brute_force([7, 7], 1) == 7
    with pytest.raises(InfeasibleError):
        mss_brute_force([3, 1], 2)


def test_brute_force_guard():
    with pytest.raises(ContractError):
        mss_brute_force([1] * (MAX_BRUTE_FORCE_M + 1), 1)


def test_rejects_nonpositive_values():
    with pytest.raises(ContractError):
        mss_solve([1, 0, 2], 1)


@given(st.lists(st.integers(1, 50), min_size=0, max_size=16), st.integers(0, 8))
def test_solve_matches_brute_force(values, r):
    if r > (len(values) + 1) // 2:
        with pytest.raises(InfeasibleError):
            mss_solve(values, r)
        return
    assert mss_solve(values, r) == mss_brute_force(values, r)


@given(st.lists(st.integers(1, 50), min_size=1, max_size=14), st.integers(0, 7))
def test_table_recursion_identities(values, r):
    M = np.asarray(mss_table(values, r))
    m = len(values)
    prefix_min = np.minimum.accumulate(np.asarray(values, np.int64))
    for i in range(m):
        assert M[i, 0] == 0
        if r >= 1:
            assert M[i, 1] == prefix_min[i]
        for j in range(2, min(r, (i + 2) // 2) + 1):
            take = values[i] + M[i - 2, j - 1]
            skip = M[i - 1, j]
            assert M[i, j] == min(take, skip)
    # feasible cells only improve with a longer prefix
    for j in range(r + 1):
        for i in range(m - 1):
            if M[i, j] < INFEASIBLE and M[i + 1, j] < INFEASIBLE:
                assert M[i, j] >= M[i + 1, j]
