"""Pure-Python (numpy) fallback kernels.

Same contracts as the compiled largesieve._kernels module.  nu_dfs mirrors
the C accumulation order exactly, so both backends produce bitwise-equal
floats.
"""

import math

import numpy as np


def sieve_mask(mask):
    """Set mask[n] = 1 iff n is prime; mask is a writable uint8 array."""
    arr = np.frombuffer(mask, dtype=np.uint8) if not isinstance(mask, np.ndarray) else mask
    limit = arr.shape[0] - 1
    arr[: min(2, limit + 1)] = 0
    if limit >= 2:
        arr[2:] = 1
        for p in range(2, math.isqrt(limit) + 1):
            if arr[p]:
                arr[p * p :: p] = 0


def nu_dfs(primes, x, s):
    """Sums over squarefree products n <= x of the given primes (n=1 included).

    Returns (count, sum_tau, sum_inv, sum_tau_inv) with tau(n) = 2^omega(n)
    and the inverse sums weighted by n^-s.
    """
    ps = np.asarray(primes, dtype=np.int64).tolist()
    n_ps = len(ps)
    s_is_one = s == 1.0
    count = 1
    sum_tau = 1
    sum_inv = 1.0
    sum_tau_inv = 1.0

    def rec(start, n, tau):
        nonlocal count, sum_tau, sum_inv, sum_tau_inv
        for j in range(start, n_ps):
            m = n * float(ps[j])
            if m > x:
                break
            t2 = tau * 2
            w = 1.0 / m if s_is_one else m ** (-s)
            count += 1
            sum_tau += t2
            sum_inv += w
            sum_tau_inv += float(t2) * w
            rec(j + 1, m, t2)

    rec(0, 1.0, 1)
    return count, sum_tau, sum_inv, sum_tau_inv


def r2_table(out, n_max):
    """out[n] = ordered coprime representations x^2 + y^2 = n, gcd(0,k) = |k|."""
    arr = np.frombuffer(out, dtype=np.int64) if not isinstance(out, np.ndarray) else out
    arr[: n_max + 1] = 0
    for xx in range(math.isqrt(n_max) + 1):
        rest = n_max - xx * xx
        ys = np.arange(math.isqrt(rest) + 1, dtype=np.int64)
        cop = np.gcd(xx, ys) == 1
        ys = ys[cop]
        mult = (2 if xx else 1) * np.where(ys > 0, 2, 1)
        np.add.at(arr, xx * xx + ys * ys, mult)
