"""Command-line surface and experiment drivers.

Subcommands: dtw, mss, mean, gen, bench, struct, ingest.  Exit codes:
0 success (or YES in threshold mode), 1 NO, 2 usage error, 3 internal
consistency failure.  The BDTW_SEED environment variable overrides the
default seed of the randomized commands.
"""

from __future__ import annotations

import csv
import io
import json
import os
import statistics
import sys
import time
from dataclasses import dataclass, fields
from fractions import Fraction

import click
import numpy as np

from .core import ContractError, parse_strings, to_text
from .data import (EVENT_IN_INTERVAL, STATE_AT_END, ParseError, gen_random,
                   parse_events, sample_to_string)
from .dtw import dtw_sq_blocks, dtw_sq_dp
from .mean import (MeanResult, candidate_bounds, center, mean_baseline,
                   mean_exhaustive, mean_fast, optima_texts, weighted_mean)
from .mss import InfeasibleError, mss_solve

DEFAULT_SEED = 0
EXHAUSTIVE_CLI_MAX_N = 13


class ConsistencyFailure(Exception):
    """Two algorithms disagreed on a value that must match (exit code 3)."""


def _default_seed() -> int:
    return int(os.environ.get("BDTW_SEED", DEFAULT_SEED))


def _read_strings_arg(path: str):
    with open(path, "r", encoding="ascii") as fh:
        return parse_strings(fh.read())


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def _float_list(text: str) -> list[float]:
    return [float(part) for part in text.split(",") if part.strip()]


@click.group()
def main() -> None:
    """Exact binary-string means, centers, and dtw distances."""


@main.command("dtw")
@click.argument("strings_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--path", "want_path", is_flag=True, help="Also print a warping path.")
@click.option("--verify", is_flag=True,
              help="Cross-check the block algorithm against the dynamic program.")
def cmd_dtw(strings_file: str, want_path: bool, verify: bool) -> None:
    """Squared dtw distance between the two strings in STRINGS_FILE."""
    try:
        strings = _read_strings_arg(strings_file)
    except ContractError as exc:
        raise click.UsageError(str(exc))
    if len(strings) != 2:
        raise click.UsageError(f"expected exactly 2 strings, got {len(strings)}")
    x, y = strings
    value = dtw_sq_blocks(x, y)
    if verify:
        dp = dtw_sq_dp(x, y).squared_distance
        if dp != value:
            click.echo(f"consistency failure: blocks={value} dp={dp}", err=True)
            sys.exit(3)
    click.echo(str(value))
    if want_path:
        for i, j in dtw_sq_dp(x, y, want_path=True).path:
            click.echo(f"({i},{j})")


@main.command("mss")
@click.option("--values", required=True, help="Comma-separated positive integers.")
@click.option("--r", "r", required=True, type=int, help="Number of selections.")
def cmd_mss(values: str, r: int) -> None:
    """Minimum 1-separated sum of R entries of VALUES."""
    try:
        click.echo(str(mss_solve(_int_list(values), r)))
    except InfeasibleError as exc:
        raise click.UsageError(f"infeasible: {exc}")
    except (ContractError, ValueError) as exc:
        raise click.UsageError(str(exc))


def _json_value(v):
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else float(v)
    return int(v)


def _result_json(result: MeanResult) -> str:
    payload = {
        "optima": optima_texts(result),
        "objective": _json_value(result.objective),
        "landscape": [
            {"length": L, "first": c, "value": _json_value(val)}
            for (L, c), val in sorted(result.landscape.items())
        ],
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


@main.command("mean")
@click.argument("strings_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--algo", type=click.Choice(["fast", "baseline", "exhaustive", "auto"]),
              default="auto", show_default=True)
@click.option("--objective", type=click.Choice(["sum", "max"]), default="sum",
              show_default=True)
@click.option("--weights", "weights_file", type=click.Path(exists=True, dir_okay=False),
              default=None, help="File with one nonnegative weight per line.")
@click.option("--threshold", type=str, default=None,
              help="Print YES/NO for objective <= THRESHOLD (exit 0/1).")
def cmd_mean(strings_file: str, algo: str, objective: str,
             weights_file: str | None, threshold: str | None) -> None:
    """Mean (or center) of the strings in STRINGS_FILE, as JSON."""
    try:
        strings = _read_strings_arg(strings_file)
        if not strings:
            raise click.UsageError("input file contains no strings")
        if objective == "max":
            if weights_file is not None:
                raise click.UsageError("--weights is not supported with --objective max")
            if algo not in ("auto", "fast"):
                raise click.UsageError("--objective max requires --algo fast/auto")
            result = center(strings)
        elif weights_file is not None:
            if algo not in ("auto", "fast"):
                raise click.UsageError("--weights requires --algo fast/auto")
            with open(weights_file, "r", encoding="ascii") as fh:
                weights = [Fraction(line.strip()) for line in fh if line.strip()]
            result = weighted_mean(strings, weights)
        elif algo == "baseline":
            result = mean_baseline(strings)
        elif algo == "exhaustive":
            n = max(s.shape[0] for s in strings)
            if n > EXHAUSTIVE_CLI_MAX_N:
                raise click.UsageError(
                    f"exhaustive search is guarded to inputs of length <= {EXHAUSTIVE_CLI_MAX_N}")
            result = mean_exhaustive(strings, n + 1)
        else:  # fast / auto
            result = mean_fast(strings)
    except ContractError as exc:
        raise click.UsageError(str(exc))
    click.echo(_result_json(result))
    if threshold is not None:
        bound = Fraction(threshold)
        if result.objective <= bound:
            click.echo("YES")
        else:
            click.echo("NO")
            sys.exit(1)


@main.command("gen")
@click.option("--n", required=True, type=int, help="String length.")
@click.option("--sparsity", required=True, type=float, help="Flip probability in [0, 1].")
@click.option("--k", default=1, show_default=True, type=int, help="Number of strings.")
@click.option("--seed", default=None, type=int, help="Base seed (default: BDTW_SEED or 0).")
def cmd_gen(n: int, sparsity: float, k: int, seed: int | None) -> None:
    """Print K random strings; string i uses seed SEED + i."""
    base = _default_seed() if seed is None else seed
    try:
        for i in range(k):
            click.echo(to_text(gen_random(n, sparsity, base + i)))
    except ContractError as exc:
        raise click.UsageError(str(exc))


# ---------------------------------------------------------------------------
# Benchmark harness.

@dataclass(frozen=True)
class BenchRecord:
    algorithm: str  # "fast" | "baseline"
    k: int
    n: int
    sparsity: float
    wall_time: float  # median of repeated runs, seconds
    objective: int


def _time_median(func, repetitions: int) -> tuple[float, int]:
    times = []
    value = None
    for _ in range(repetitions):
        t0 = time.perf_counter()
        value = func()
        times.append(time.perf_counter() - t0)
    return statistics.median(times), value


def run_bench_grid(ks: list[int], ns: list[int], sparsities: list[float],
                   seeds: int, algos: list[str], baseline_cap: int,
                   repetitions: int = 3, base_seed: int | None = None,
                   ) -> list[BenchRecord]:
    """One record per (grid cell, seed, algorithm); objectives must agree.

    Baseline runs are refused above ``baseline_cap`` (quadratic cost).
    Kernels are warmed up before any timing; each cell's wall time is
    the median of ``repetitions`` runs on a monotonic clock.
    """
    base = _default_seed() if base_seed is None else base_seed
    for algo in algos:
        if algo not in ("fast", "baseline"):
            raise ContractError(f"unknown algorithm {algo!r}")
    if "baseline" in algos:
        too_big = [n for n in ns if n > baseline_cap]
        if too_big:
            raise ContractError(
                f"baseline is capped at n <= {baseline_cap}; drop {too_big} or raise the cap")
    warm = [gen_random(16, 0.5, (base, 0xBEEF, t)) for t in range(2)]
    mean_fast(warm)
    mean_baseline(warm)
    records = []
    cell = 0
    for k in ks:
        for n in ns:
            for sigma in sparsities:
                for s in range(seeds):
                    strings = [gen_random(n, sigma, (base, cell, s, t))
                               for t in range(k)]
                    objectives = {}
                    for algo in algos:
                        func = mean_fast if algo == "fast" else mean_baseline
                        wall, result = _time_median(lambda: func(strings), repetitions)
                        objectives[algo] = result.objective
                        records.append(BenchRecord(algo, k, n, sigma, wall,
                                                   result.objective))
                    if len(set(objectives.values())) > 1:
                        raise ConsistencyFailure(
                            f"objective mismatch at k={k} n={n} sparsity={sigma} "
                            f"seed={s}: {objectives}")
                cell += 1
    return records


def _write_records(records, stream) -> None:
    names = [f.name for f in fields(records[0])]
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(names)
    for rec in records:
        writer.writerow([getattr(rec, name) for name in names])


@main.command("bench")
@click.option("--k", "ks", default="10", show_default=True, help="Comma list of k values.")
@click.option("--n", "ns", default="1000", show_default=True, help="Comma list of lengths.")
@click.option("--sparsity", "sparsities", default="0.1", show_default=True,
              help="Comma list of sparsities.")
@click.option("--seeds", default=1, show_default=True, type=int,
              help="Instances per grid cell.")
@click.option("--algos", type=click.Choice(["both", "fast", "baseline"]),
              default="both", show_default=True)
@click.option("--baseline-cap", default=2000, show_default=True, type=int)
@click.option("--seed", default=None, type=int, help="Base seed (default: BDTW_SEED or 0).")
@click.option("--out", default="-", show_default=True, help="CSV output path or '-'.")
def cmd_bench(ks: str, ns: str, sparsities: str, seeds: int, algos: str,
              baseline_cap: int, seed: int | None, out: str) -> None:
    """Wall-time comparison of the fast and baseline mean algorithms."""
    algo_list = ["fast", "baseline"] if algos == "both" else [algos]
    try:
        records = run_bench_grid(_int_list(ks), _int_list(ns), _float_list(sparsities),
                                 seeds, algo_list, baseline_cap, base_seed=seed)
    except ContractError as exc:
        raise click.UsageError(str(exc))
    except ConsistencyFailure as exc:
        click.echo(f"consistency failure: {exc}", err=True)
        sys.exit(3)
    if not records:
        raise click.UsageError("empty benchmark grid")
    if out == "-":
        buf = io.StringIO()
        _write_records(records, buf)
        click.echo(buf.getvalue(), nl=False)
    else:
        with open(out, "w", encoding="ascii", newline="") as fh:
            _write_records(records, fh)


# ---------------------------------------------------------------------------
# Structural-observation harness.

@dataclass(frozen=True)
class StructRecord:
    sparsity: float
    k: int
    median_condensed_length: int
    mean_length: int
    length_diff: int  # mean_length - median_condensed_length; >= -2 always
    first_symbol_match_majority: int   # 0/1
    first_symbol_match_blocksum: int   # 0/1


def run_struct_grid(sparsities: list[float], ks: list[int], n: int, runs: int,
                    base_seed: int | None = None,
                    ) -> tuple[list[StructRecord], dict, dict]:
    """Mean-shape statistics over a (sparsity, k) grid.

    For each run the canonical mean (first optimum by length, then
    start symbol) is compared against the inputs: does its first symbol
    match the majority of input start symbols, and the larger summed
    start-block length?  Ties on the input side count as matches.
    Returns the per-run records plus the two (k, sparsity) -> frequency
    tables.
    """
    base = _default_seed() if base_seed is None else base_seed
    records = []
    majority_rate: dict[tuple[int, float], float] = {}
    blocksum_rate: dict[tuple[int, float], float] = {}
    cell = 0
    for k in ks:
        for sigma in sparsities:
            maj_hits = 0
            blk_hits = 0
            for run in range(runs):
                strings = [gen_random(n, sigma, (base, cell, run, t))
                           for t in range(k)]
                result = mean_fast(strings)
                zbits = result.optima[0]
                bounds = candidate_bounds(strings)
                mean_len = int(zbits.shape[0])
                diff = mean_len - bounds.mu
                if diff < -2 or mean_len > bounds.m + 1:
                    raise ConsistencyFailure(
                        f"mean length {mean_len} violates the candidate window "
                        f"[{max(1, bounds.mu - 2)}, {bounds.m + 1}]")
                first = int(zbits[0])
                ones = sum(int(s[0]) for s in strings)
                zeros = k - ones
                maj = int((first == 1 and ones >= zeros) or (first == 0 and zeros >= ones))
                one_blocks = 0
                zero_blocks = 0
                for s in strings:
                    run_len = int(np.argmax(s != s[0])) or s.shape[0]
                    if s[0] == 1:
                        one_blocks += run_len
                    else:
                        zero_blocks += run_len
                blk = int((first == 1 and one_blocks >= zero_blocks)
                          or (first == 0 and zero_blocks >= one_blocks))
                maj_hits += maj
                blk_hits += blk
                records.append(StructRecord(sigma, k, bounds.mu, mean_len, diff,
                                            maj, blk))
            majority_rate[(k, sigma)] = maj_hits / runs
            blocksum_rate[(k, sigma)] = blk_hits / runs
            cell += 1
    return records, majority_rate, blocksum_rate


def _write_rate_table(title: str, rate: dict, ks: list[int],
                      sparsities: list[float], stream) -> None:
    stream.write(f"# {title}\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["k/sparsity"] + [str(s) for s in sparsities])
    for k in ks:
        writer.writerow([k] + [f"{rate[(k, s)]:.3f}" for s in sparsities])


@main.command("struct")
@click.option("--sparsity", "sparsities", default="0.05,0.1,0.2,0.5,0.8,1.0",
              show_default=True)
@click.option("--k", "ks", default="5,15,40", show_default=True)
@click.option("--n", default=200, show_default=True, type=int)
@click.option("--runs", default=200, show_default=True, type=int)
@click.option("--seed", default=None, type=int, help="Base seed (default: BDTW_SEED or 0).")
@click.option("--out", default="-", show_default=True,
              help="Per-run CSV path or '-' (aggregates always go to stdout).")
def cmd_struct(sparsities: str, ks: str, n: int, runs: int, seed: int | None,
               out: str) -> None:
    """Structural statistics of computed means over a sparsity/k grid."""
    sp = _float_list(sparsities)
    kv = _int_list(ks)
    try:
        records, majority, blocksum = run_struct_grid(sp, kv, n, runs, base_seed=seed)
    except ContractError as exc:
        raise click.UsageError(str(exc))
    except ConsistencyFailure as exc:
        click.echo(f"consistency failure: {exc}", err=True)
        sys.exit(3)
    if out == "-":
        buf = io.StringIO()
        _write_records(records, buf)
        click.echo(buf.getvalue(), nl=False)
    else:
        with open(out, "w", encoding="ascii", newline="") as fh:
            _write_records(records, fh)
    buf = io.StringIO()
    _write_rate_table("majority_match_rate", majority, kv, sp, buf)
    _write_rate_table("blocksum_match_rate", blocksum, kv, sp, buf)
    click.echo(buf.getvalue(), nl=False)


@main.command("ingest")
@click.argument("events_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--interval", default="60000", show_default=True,
              help="Interval length: milliseconds, or with an s/m/h suffix.")
@click.option("--mode", type=click.Choice([STATE_AT_END, EVENT_IN_INTERVAL]),
              default=STATE_AT_END, show_default=True)
@click.option("--state-map", default="ON=1,OFF=0,OPEN=1,CLOSE=0", show_default=True,
              help="Comma list of RAW=BIT pairs.")
@click.option("--span", default=None,
              help="START:END in epoch ms (default: full event extent).")
@click.option("--initial-state", default=0, show_default=True, type=int,
              help="Held state before a sensor's first event.")
@click.option("--sensor", default=None, help="Emit only this sensor.")
def cmd_ingest(events_file: str, interval: str, mode: str, state_map: str,
               span: str | None, initial_state: int, sensor: str | None) -> None:
    """Convert a timestamped event log into one string per sensor."""
    interval_ms = _parse_interval(interval)
    mapping = {}
    for pair in state_map.split(","):
        if not pair.strip():
            continue
        raw, _, bit = pair.partition("=")
        try:
            mapping[raw.strip()] = int(bit)
        except ValueError:
            raise click.UsageError(f"bad state-map entry {pair!r}")
    try:
        with open(events_file, "r", encoding="ascii") as fh:
            per_sensor = parse_events(fh, mapping)
    except (ParseError, ContractError) as exc:
        raise click.UsageError(str(exc))
    if not per_sensor:
        raise click.UsageError("no events found")
    if sensor is not None:
        if sensor not in per_sensor:
            raise click.UsageError(f"sensor {sensor!r} not present")
        per_sensor = {sensor: per_sensor[sensor]}
    if span is not None:
        start_text, _, end_text = span.partition(":")
        try:
            window = (int(start_text), int(end_text))
        except ValueError:
            raise click.UsageError(f"bad span {span!r}; expected START:END")
    else:
        all_ts = [e.timestamp for events in per_sensor.values() for e in events]
        window = (min(all_ts), max(all_ts) + interval_ms)
    try:
        for sensor_id in sorted(per_sensor):
            string = sample_to_string(per_sensor[sensor_id], interval_ms, mode,
                                      window, initial_state)
            click.echo(to_text(string))
    except ContractError as exc:
        raise click.UsageError(str(exc))


def _parse_interval(text: str) -> int:
    text = text.strip().lower()
    scale = 1
    for suffix, factor in (("ms", 1), ("s", 1000), ("m", 60_000), ("h", 3_600_000)):
        if text.endswith(suffix):
            scale = factor
            text = text[:-len(suffix)]
            break
    try:
        return int(text) * scale
    except ValueError:
        raise click.UsageError(f"bad interval {text!r}")


if __name__ == "__main__":
    main()
