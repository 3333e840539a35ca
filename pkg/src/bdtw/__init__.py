"""Exact means, weighted means, and centers of binary strings under
squared dynamic time warping, plus the distance algorithms behind them.

Quick start::

    >>> import bdtw
    >>> bdtw.dtw_sq_blocks("00101100101", "0001100111")
    2
    >>> bdtw.optima_texts(bdtw.mean_fast(["000", "111"]))
    ['01', '10']

Hot kernels are numba-compiled by default; set ``BDTW_BACKEND=numpy``
before import to force the pure-numpy fallback.
"""

from ._kernels import BACKEND
from .core import (BlockProfile, ContractError, bits, block_profile, condense,
                   condensed_string, parse_strings, to_text,
                   validate_warping_path)
from .data import (EVENT_IN_INTERVAL, STATE_AT_END, ParseError, SensorEvent,
                   empirical_sparsity, gen_random, parse_events,
                   sample_to_string)
from .dtw import (DtwResult, dtw_all_condensed, dtw_sq_blocks,
                  dtw_sq_condensed, dtw_sq_dp)
from .mean import (CandidateBounds, MeanResult, candidate_bounds, center,
                   mean_baseline, mean_exhaustive, mean_fast,
                   mean_three_matched, mean_two, optima_texts, weighted_mean)
from .mss import (InfeasibleError, mss_brute_force, mss_solve, mss_table)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BlockProfile",
    "CandidateBounds",
    "ContractError",
    "DtwResult",
    "EVENT_IN_INTERVAL",
    "InfeasibleError",
    "MeanResult",
    "ParseError",
    "STATE_AT_END",
    "SensorEvent",
    "bits",
    "block_profile",
    "candidate_bounds",
    "center",
    "condense",
    "condensed_string",
    "dtw_all_condensed",
    "dtw_sq_blocks",
    "dtw_sq_condensed",
    "dtw_sq_dp",
    "empirical_sparsity",
    "gen_random",
    "mean_baseline",
    "mean_exhaustive",
    "mean_fast",
    "mean_three_matched",
    "mean_two",
    "mss_brute_force",
    "mss_solve",
    "mss_table",
    "optima_texts",
    "parse_events",
    "parse_strings",
    "sample_to_string",
    "to_text",
    "validate_warping_path",
    "weighted_mean",
]
