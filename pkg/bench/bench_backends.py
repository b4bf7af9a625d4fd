#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy/Python fallbacks.

Usage: python bench/bench_backends.py [--quick]

Times the three hot kernels (prime sieve, squarefree-product DFS, coprime
two-square table) on both backends and prints the speedups.  The DFS is
where compilation pays: the sieve and lattice table are already vector
work in the fallback.
"""

import argparse
import time

import numpy as np

try:
    from largesieve import _kernels as kern_c
except ImportError:
    kern_c = None
from largesieve import _kernels_py as kern_py


def best_of(fn, repeats=3):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def primes_3mod4(limit):
    mask = np.zeros(limit + 1, dtype=np.uint8)
    kern_py.sieve_mask(mask)
    ps = np.flatnonzero(mask).astype(np.int64)
    return ps[ps % 4 == 3]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true", help="smaller sizes")
    args = parser.parse_args()

    sieve_limit = 10**6 if args.quick else 10**7
    dfs_x = 10**6 if args.quick else 10**7
    r2_max = 10**5 if args.quick else 10**6

    if kern_c is None:
        print("compiled kernels unavailable; nothing to compare")
        return

    ps = primes_3mod4(dfs_x)
    cases = [
        ("sieve_mask(%.0e)" % sieve_limit,
         lambda k: k.sieve_mask(np.zeros(sieve_limit + 1, dtype=np.uint8))),
        ("nu_dfs(x=%.0e)" % dfs_x,
         lambda k: k.nu_dfs(ps, float(dfs_x), 1.0)),
        ("r2_table(%.0e)" % r2_max,
         lambda k: k.r2_table(np.zeros(r2_max + 1, dtype=np.int64), r2_max)),
    ]

    print(f"{'kernel':<24} {'compiled':>12} {'fallback':>12} {'speedup':>9}")
    for name, runner in cases:
        t_c = best_of(lambda: runner(kern_c))
        t_py = best_of(lambda: runner(kern_py))
        print(f"{name:<24} {t_c * 1e3:>10.1f}ms {t_py * 1e3:>10.1f}ms "
              f"{t_py / t_c:>8.1f}x")

    # sanity: identical results on a shared case
    out_c = kern_c.nu_dfs(ps, float(dfs_x), 1.0)
    out_py = kern_py.nu_dfs(ps, float(dfs_x), 1.0)
    assert out_c == out_py, "backend results diverge"
    print("backend agreement: exact")


if __name__ == "__main__":
    main()
