#!/usr/bin/env python3
"""Benchmark the batch rating kernel: numba JIT loop vs pure numpy.

Runs the full exhaustive sweep (442,368 inputs) plus synthetic batches of
increasing size through both backends and prints a timing table. The numba
path includes a separate line for its one-off compile cost.

Usage:
    python benchmarks/bench_rating_grid.py [--sizes 100000,1000000] [--repeats 5]
"""

from __future__ import annotations

import argparse
import os
import time

import numpy as np


def _time(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        started = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - started)
    return best


def _random_batch(rng: np.random.Generator, size: int):
    return (
        rng.integers(1, 4, size, dtype=np.int32),
        rng.integers(1, 4, size, dtype=np.int32),
        rng.integers(0, 1 << 13, size, dtype=np.int32),
        rng.integers(1, 7, size, dtype=np.int32),
    )


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="100000,1000000",
                        help="comma-separated synthetic batch sizes")
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",") if s]

    from eucrisk.rating import grid

    if not os.environ.get(grid.NO_NUMBA_ENV):
        started = time.perf_counter()
        tiny = np.ones(1, dtype=np.int32)
        grid._rate_numba(tiny, tiny, tiny, tiny)
        print(f"numba compile (one-off): {time.perf_counter() - started:8.3f} s")
    else:
        print(f"{grid.NO_NUMBA_ENV} set: numba path skipped")

    rng = np.random.default_rng(7)
    batches = [("exhaustive 442,368", grid.exhaustive_inputs())]
    batches += [(f"random {size:,}", _random_batch(rng, size)) for size in sizes]

    print(f"{'batch':<22} {'numpy':>12} {'numba':>12} {'speedup':>9}")
    for label, batch in batches:
        numpy_time = _time(lambda: grid._rate_numpy(*batch), args.repeats)
        if os.environ.get(grid.NO_NUMBA_ENV):
            print(f"{label:<22} {numpy_time * 1e3:10.2f}ms {'-':>12} {'-':>9}")
            continue
        numba_time = _time(lambda: grid._rate_numba(*batch), args.repeats)
        speedup = numpy_time / numba_time if numba_time else float("inf")
        print(f"{label:<22} {numpy_time * 1e3:10.2f}ms {numba_time * 1e3:10.2f}ms "
              f"{speedup:8.2f}x")

    # both paths must agree before any number above means anything
    c, m, q, i = grid.exhaustive_inputs()
    via_numpy = grid._rate_numpy(c, m, q, i)
    if not os.environ.get(grid.NO_NUMBA_ENV):
        via_numba = grid._rate_numba(c, m, q, i)
        for name in ("failures", "depth", "score", "band", "escalated", "clamped"):
            np.testing.assert_array_equal(getattr(via_numpy, name), getattr(via_numba, name))
        print("backends agree on the exhaustive sweep")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
