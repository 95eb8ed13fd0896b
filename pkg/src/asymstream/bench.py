"""Timing grids for the three algorithm families, written as CSV."""

from __future__ import annotations

import csv
import gc
import platform
import random
import statistics
import sys
import time
from dataclasses import asdict, dataclass, fields

from .core import CharStream, SpaceMeter, open_text
from .generators import random_string
from .lcs import lcs_exact
from .pattern_match import match_run
from .wildcard import WildcardPattern, sampled_wildcard_match

SUITES = ("match", "lcs", "wildcard")
DEFAULT_SIZES = {
    "match": [100_000, 200_000, 400_000],
    "lcs": [100, 200, 400],
    "wildcard": [16, 128, 1024],  # space budgets s at fixed n
}
WILDCARD_N = 1 << 13


@dataclass
class BenchRow:
    algorithm: str
    n: int
    m: int
    param: str
    time_ms: float | str
    peak_words: int | str
    passes: int | str


def _median_ms(fn, repetitions: int):
    # collector paused while timing, as timeit does
    times, out = [], None
    enabled = gc.isenabled()
    gc.collect()
    gc.disable()
    try:
        for _ in range(repetitions):
            t0 = time.perf_counter()
            out = fn()
            times.append((time.perf_counter() - t0) * 1000.0)
    finally:
        if enabled:
            gc.enable()
    return statistics.median(times), out


def match_cell(n: int, repetitions: int = 3, seed=0, m: int = 64) -> BenchRow:
    rng = random.Random(seed)
    text = random_string(rng, n, 2)
    pattern = random_string(rng, m, 2)

    def run():
        meter, stream = SpaceMeter(), CharStream(pattern)
        match_run(open_text(text), stream, seed=seed, meter=meter)
        return meter.peak_words, stream.passes_started

    ms, (peak, passes) = _median_ms(run, repetitions)
    return BenchRow("match", n, m, "randomized", round(ms, 3), peak, passes)


def lcs_cell(n: int, repetitions: int = 3, seed=0) -> BenchRow:
    rng = random.Random(seed)
    text, stream_bytes = random_string(rng, n, 4), random_string(rng, n, 4)

    def run():
        meter, stream = SpaceMeter(), CharStream(stream_bytes)
        lcs_exact(open_text(text), stream, mode="verified", seed=seed, meter=meter)
        return meter.peak_words, stream.passes_started

    ms, (peak, passes) = _median_ms(run, repetitions)
    return BenchRow("lcs_exact", n, n, "verified", round(ms, 3), peak, passes)


def wildcard_worst_case(n: int, m: int) -> tuple[bytes, WildcardPattern]:
    """``a^n`` against ``?^(m-1) b``: no match, and every residue class but one passes."""
    return b"a" * n, WildcardPattern((None,) * (m - 1) + (ord("b"),))


def wildcard_cell(s: int, repetitions: int = 3, n: int = WILDCARD_N, oracle="auto") -> BenchRow:
    m = n // 8
    text, pattern = wildcard_worst_case(n, m)

    def run():
        meter = SpaceMeter()
        sampled_wildcard_match(text, pattern, s, oracle=oracle, meter=meter)
        return meter.peak_words, 0

    ms, (peak, passes) = _median_ms(run, repetitions)
    return BenchRow("wildcard_sampled", n, m, f"s={s}", round(ms, 3), peak, passes)


CELLS = {"match": match_cell, "lcs": lcs_cell, "wildcard": wildcard_cell}


def run_suite(suite: str, sizes=None, repetitions: int = 3) -> list[BenchRow]:
    rows = []
    for size in sizes or DEFAULT_SIZES[suite]:
        try:
            rows.append(CELLS[suite](size, repetitions))
        except Exception as exc:  # a failed cell is recorded, not fatal
            print(f"bench cell {suite}/{size} failed: {exc}", file=sys.stderr)
            rows.append(BenchRow(suite, size, 0, "", "NA", "NA", "NA"))
    return rows


def write_csv(rows: list[BenchRow], out) -> None:
    writer = csv.DictWriter(out, fieldnames=[f.name for f in fields(BenchRow)], lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(asdict(row))
    out.write(f"# env: python {platform.python_version()} {platform.machine()} {platform.system()}\n")
