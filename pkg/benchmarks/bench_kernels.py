#!/usr/bin/env python3
"""Benchmark the hot kernels: numba @njit loop vs pure-numpy batch.

Usage: python benchmarks/bench_kernels.py [--trials N]

Times each kernel on both backends (after a warmup call that also absorbs
JIT compilation) and prints a table with the speedup of the active-default
numba path over the numpy fallback.
"""

import argparse
import time

import numpy as np

from qmarginal import kernels, random_density
from qmarginal.backend import HAS_NUMBA


def timeit(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--trials", type=int, default=20_000)
    args = parser.parse_args()
    trials = args.trials

    if not HAS_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    sigma = np.ascontiguousarray(random_density(6, 4, seed=1).matrix)
    seed = np.uint64(42)

    cases = {
        f"raw_block ({trials * 48:,} values)": dict(
            args=(seed, 0, trials * 48), name="raw_block"
        ),
        f"normal_block ({trials * 48:,} values)": dict(
            args=(seed, 0, trials * 48), name="normal_block"
        ),
        f"residual_spectra (2x3, k=2, {trials:,} trials)": dict(
            args=(sigma, 2, 6, 2, trials, seed, 0), name="residual_spectra"
        ),
        f"census_spectra (2x3, {trials // 10:,} trials)": dict(
            args=(2, 3, trials // 10, seed, 0), name="census_spectra"
        ),
    }

    print(f"{'kernel':<46} {'numpy':>10} {'numba':>10} {'speedup':>8}")
    for label, case in cases.items():
        np_fn = kernels.IMPLEMENTATIONS["numpy"][case["name"]]
        nb_fn = kernels.IMPLEMENTATIONS["numba"][case["name"]]
        nb_fn(*case["args"])  # warmup: JIT compile
        t_np = timeit(lambda: np_fn(*case["args"]))
        t_nb = timeit(lambda: nb_fn(*case["args"]))
        print(f"{label:<46} {t_np * 1e3:>8.1f}ms {t_nb * 1e3:>8.1f}ms {t_np / t_nb:>7.2f}x")


if __name__ == "__main__":
    main()
