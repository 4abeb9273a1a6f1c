"""Benchmark the numba batch kernels against the pure-numpy fallback.

Usage: python benchmarks/bench_kernels.py [N]

Times one warm call (after a warm-up to exclude JIT compilation) of each
batch kernel on N random items per backend. Run with QUATROT_NO_NUMBA=1
to confirm the fallback path is what you think it is.
"""

import sys
import time

import numpy as np

import quatrot.kernels as kernels
from quatrot.rng import Xorshift64Star, random_unit_quaternion


def _time(fn, *args, repeats=5):
    fn(*args)  # warm-up (JIT compile / cache touch)
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 100_000
    rng = Xorshift64Star(2024)
    left = np.stack([random_unit_quaternion(rng) for _ in range(n)])
    right = np.stack([random_unit_quaternion(rng) for _ in range(n)])
    mats3 = kernels._np_batch_euler_rodrigues(left)
    mats4 = kernels._np_batch_compose_4d(left, right)

    cases = [
        ("euler_rodrigues", (left,), "batch_euler_rodrigues", "_np_batch_euler_rodrigues"),
        ("extract_rotation", (mats3,), "batch_extract_rotation", "_np_batch_extract_rotation"),
        ("compose_4d", (left, right), "batch_compose_4d", "_np_batch_compose_4d"),
        ("associate_matrix", (mats4,), "batch_associate_matrix", "_np_batch_associate_matrix"),
        ("decompose_4d", (mats4,), "batch_decompose_4d", "_np_batch_decompose_4d"),
    ]

    print(f"live backend: {kernels.BACKEND}, n = {n}")
    print(f"{'kernel':<20} {'live [ms]':>12} {'numpy [ms]':>12} {'speedup':>9}")
    for name, args, live_name, np_name in cases:
        live = _time(getattr(kernels, live_name), *args)
        fallback = _time(getattr(kernels, np_name), *args)
        print(f"{name:<20} {live * 1e3:>12.2f} {fallback * 1e3:>12.2f} {fallback / live:>8.2f}x")


if __name__ == "__main__":
    main()
