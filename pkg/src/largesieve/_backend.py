"""Kernel backend selection.

The compiled extension is preferred; the numpy fallback is used when the
extension is absent or when LARGESIEVE_FORCE_PY is set.  Both expose the
same three kernels (see _kernels_py for the contracts).
"""

import os

import numpy as np

if os.environ.get("LARGESIEVE_FORCE_PY"):
    from largesieve import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from largesieve import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "c"
    except ImportError:
        from largesieve import _kernels_py as _impl

        BACKEND = "python"


def prime_mask(limit: int) -> np.ndarray:
    """uint8 array of length limit+1 with 1 at primes."""
    mask = np.zeros(limit + 1, dtype=np.uint8)
    _impl.sieve_mask(mask)
    return mask


def nu_dfs(primes: np.ndarray, x: float, s: float = 1.0):
    """(count, sum_tau, sum_inv, sum_tau_inv) over squarefree products <= x.

    primes: ascending int64 array, every entry <= x; products of distinct
    entries are enumerated, n = 1 included.
    """
    ps = np.ascontiguousarray(primes, dtype=np.int64)
    ps = ps[ps <= x]
    return _impl.nu_dfs(ps, float(x), float(s))


def r2_counts(n_max: int) -> np.ndarray:
    """int64 array with entry n = ordered coprime representations of n."""
    out = np.zeros(n_max + 1, dtype=np.int64)
    _impl.r2_table(out, n_max)
    return out
