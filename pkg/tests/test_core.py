import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bdtw.core import (ContractError, bits, block_profile, condense,
                       condensed_string, parse_strings, to_text,
                       validate_warping_path)

binary_texts = st.text(alphabet="01", min_size=1, max_size=80)


def test_bits_accepts_text_lists_and_arrays():
    assert to_text(bits("0110")) == "0110"
    assert to_text(bits([0, 1, 1])) == "011"
    assert to_text(bits(np.array([1, 0], dtype=np.int64))) == "10"


def test_bits_rejects_bad_input():
    with pytest.raises(ContractError):
        bits("")
    with pytest.raises(ContractError):
        bits("0120")
    with pytest.raises(ContractError):
        bits([0, 2])
    with pytest.raises(ContractError):
        bits([])


def test_bits_is_read_only():
    b = bits("010")
    with pytest.raises(ValueError):
        b[0] = 1


def test_condense_examples():
    assert to_text(condense("00101100101")) == "01010101"
    assert to_text(condense("0")) == "0"
    assert to_text(condense("0001100111")) == "0101"


def test_block_profile_examples():
    p = block_profile("00101100101")
    assert (p.first, list(p.sizes)) == (0, [2, 1, 1, 2, 2, 1, 1, 1])
    p = block_profile("0001100111")
    assert (p.first, list(p.sizes)) == (0, [3, 2, 2, 3])
    p = block_profile("1")
    assert (p.first, list(p.sizes)) == (1, [1])
    assert p.last == 1


def test_condensed_string_examples():
    assert to_text(condensed_string(0, 4)) == "0101"
    assert to_text(condensed_string(1, 1)) == "1"
    assert to_text(condensed_string(1, 3)) == "101"
    with pytest.raises(ContractError):
        condensed_string(0, 0)
    with pytest.raises(ContractError):
        condensed_string(2, 3)


def test_validate_warping_path_examples():
    assert validate_warping_path([(1, 1), (2, 2)], 2, 2)
    assert validate_warping_path([(1, 1), (1, 2), (2, 2)], 2, 2)
    assert not validate_warping_path([(1, 1), (3, 1)], 3, 1)
    assert not validate_warping_path([], 1, 1)
    assert not validate_warping_path([(1, 1)], 2, 1)


@given(binary_texts)
def test_condense_is_idempotent(text):
    once = condense(text)
    assert np.array_equal(condense(once), once)


@given(binary_texts)
def test_block_count_equals_condensation_length(text):
    assert block_profile(text).count == condense(text).shape[0]


@given(binary_texts)
def test_block_sizes_sum_to_length(text):
    assert block_profile(text).length == len(text)


@given(st.integers(0, 1), st.integers(1, 60))
def test_condensed_string_profile_is_all_ones(first, length):
    p = block_profile(condensed_string(first, length))
    assert p.first == first
    assert list(p.sizes) == [1] * length


def test_parse_strings_reports_line_numbers():
    assert [to_text(s) for s in parse_strings("01\n\n10\n")] == ["01", "10"]
    with pytest.raises(ContractError, match="line 2"):
        parse_strings("01\n0a1\n")
