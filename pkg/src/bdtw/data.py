"""Random instance generation and sensor-event ingestion.

:func:`gen_random` draws strings with a controlled expected sparsity
(fraction of positions that start a new block): the first symbol is
uniform and every later symbol flips the previous one with the given
probability.  Generation uses numpy's documented PCG64 generator; the
contract is determinism for a fixed seed across runs, not bit-identity
with any other library.

:func:`parse_events` and :func:`sample_to_string` turn timestamped
binary-state event logs (CSV or TSV: ``timestamp_ms,sensor_id,value``)
into binary strings by fixed-interval sampling.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .core import ContractError

STATE_AT_END = "state_at_end"
EVENT_IN_INTERVAL = "event_in_interval"

DEFAULT_STATE_MAP = {"ON": 1, "OFF": 0, "OPEN": 1, "CLOSE": 0}


class ParseError(ValueError):
    """Malformed event input; the message carries the line number."""


def gen_random(n: int, sparsity: float, seed) -> np.ndarray:
    """Random binary string of length ``n`` with flip probability ``sparsity``.

    ``seed`` is anything numpy's ``default_rng`` accepts (an int, or a
    tuple of ints for derived streams).  sparsity 0 yields a constant
    string, sparsity 1 a perfectly alternating one.
    """
    if n < 1:
        raise ContractError(f"n must be >= 1, got {n}")
    if not 0.0 <= sparsity <= 1.0:
        raise ContractError(f"sparsity must be in [0, 1], got {sparsity}")
    rng = np.random.default_rng(seed)
    first = int(rng.integers(0, 2))
    out = np.empty(n, np.uint8)
    out[0] = first
    if n > 1:
        flips = (rng.random(n - 1) < sparsity).astype(np.uint8)
        out[1:] = flips
        out = np.bitwise_xor.accumulate(out)
    out.setflags(write=False)
    return out


def empirical_sparsity(s: np.ndarray) -> float:
    """Observed block density |condensation| / |s|."""
    blocks = 1 + int(np.count_nonzero(s[1:] != s[:-1]))
    return blocks / s.shape[0]


@dataclass(frozen=True)
class SensorEvent:
    timestamp: int  # epoch milliseconds
    sensor_id: str
    state: int      # 0 or 1 after normalization


def parse_events(lines: Iterable[str],
                 state_map: Mapping[str, int] | None = None,
                 ) -> dict[str, list[SensorEvent]]:
    """Group and time-sort events per sensor.

    Lines are comma- or TAB-separated ``timestamp, sensor_id, value``;
    a leading header line (non-integer timestamp and a value field that
    is not a known state) is skipped.  Raw values go through
    ``state_map`` (default maps ON/OPEN -> 1, OFF/CLOSE -> 0); an
    unmapped value is an error naming it.  Unsorted timestamps are
    accepted and re-sorted stably.
    """
    mapping = DEFAULT_STATE_MAP if state_map is None else dict(state_map)
    for raw, bit in mapping.items():
        if bit not in (0, 1):
            raise ContractError(f"state_map value for {raw!r} must be 0 or 1")
    out: dict[str, list[SensorEvent]] = {}
    first_data_line = True
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped:
            continue
        fields = stripped.split("\t") if "\t" in stripped else stripped.split(",")
        if len(fields) != 3:
            raise ParseError(f"line {lineno}: expected 3 fields, got {len(fields)}")
        ts_text, sensor_id, raw_value = (f.strip() for f in fields)
        try:
            ts = int(ts_text)
        except ValueError:
            if first_data_line and raw_value not in mapping:  # header row
                first_data_line = False
                continue
            raise ParseError(f"line {lineno}: bad timestamp {ts_text!r}") from None
        first_data_line = False
        if raw_value not in mapping:
            raise ParseError(f"line {lineno}: unmapped value {raw_value!r}")
        out.setdefault(sensor_id, []).append(
            SensorEvent(ts, sensor_id, mapping[raw_value]))
    for sensor_id, events in out.items():
        events.sort(key=lambda e: e.timestamp)
    return out


def sample_to_string(events: Sequence[SensorEvent],
                     interval_ms: int,
                     mode: str,
                     span: tuple[int, int],
                     initial_state: int = 0) -> np.ndarray:
    """One symbol per whole interval of ``span`` = (start, end).

    ``state_at_end`` emits the state the sensor carries into each
    interval: the value of the latest event stamped at or before the
    interval's opening instant (``initial_state`` before any event).
    ``event_in_interval`` emits 1 iff at least one event falls inside
    the interval.
    """
    if interval_ms < 1:
        raise ContractError(f"interval must be positive, got {interval_ms}")
    if initial_state not in (0, 1):
        raise ContractError("initial_state must be 0 or 1")
    start, end = span
    count = (end - start) // interval_ms
    if count < 1:
        raise ContractError("span must cover at least one whole interval")
    ts = np.array([e.timestamp for e in events], np.int64)
    if ts.shape[0] > 1 and (np.diff(ts) < 0).any():
        raise ContractError("events must be sorted by timestamp")
    states = np.array([e.state for e in events], np.uint8)
    opens = start + interval_ms * np.arange(count, dtype=np.int64)
    if mode == STATE_AT_END:
        if ts.shape[0] == 0:
            out = np.full(count, initial_state, np.uint8)
        else:
            idx = np.searchsorted(ts, opens, side="right") - 1
            out = np.where(idx >= 0, states[np.maximum(idx, 0)],
                           np.uint8(initial_state))
    elif mode == EVENT_IN_INTERVAL:
        lo = np.searchsorted(ts, opens, side="left")
        hi = np.searchsorted(ts, opens + interval_ms, side="left")
        out = (hi > lo)
    else:
        raise ContractError(f"unknown sampling mode {mode!r}")
    out = out.astype(np.uint8)
    out.setflags(write=False)
    return out
