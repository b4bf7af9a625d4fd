"""Prime sieving, factorization, and the arithmetic functions used throughout.

Everything here is a pure function of its inputs; PrimeTable instances are
immutable after construction and safe to share between threads.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field

import numpy as np

from largesieve import _backend
from largesieve.errors import ResourceLimitError

# Desk-scale guard: sieving/enumeration requests beyond this raise
# ResourceLimitError rather than thrash memory.  10^8 entries ~ 100 MB mask.
SIEVE_LIMIT_BUDGET = 10**8


@dataclass(frozen=True)
class PrimeTable:
    """All primes <= limit, ascending."""

    limit: int
    primes: np.ndarray  # int64, ascending

    def __post_init__(self):
        self.primes.setflags(write=False)

    def __len__(self) -> int:
        return int(self.primes.shape[0])

    def upto(self, x: int | float) -> np.ndarray:
        """Primes <= x (requires x <= limit)."""
        if x > self.limit:
            raise ValueError(f"table only covers primes <= {self.limit}")
        return self.primes[: int(np.searchsorted(self.primes, math.floor(x), side="right"))]


@dataclass(frozen=True)
class FactoredInt:
    """A positive integer with its prime factorization.

    factors is a tuple of (prime, exponent) pairs with primes strictly
    increasing; n = 1 has an empty tuple.
    """

    n: int
    factors: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if e < 1 or p <= last:
                raise ValueError(f"malformed factorization of {self.n}")
            last = p
            prod *= p**e
        if prod != self.n or self.n < 1:
            raise ValueError(f"factorization does not multiply back to {self.n}")

    @property
    def prime_factors(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def divisors(self) -> list[int]:
        """All positive divisors, unsorted."""
        divs = [1]
        for p, e in self.factors:
            divs = [d * p**k for d in divs for k in range(e + 1)]
        return divs


_table_lock = threading.Lock()
_table: PrimeTable | None = None


def sieve_primes(limit: int) -> PrimeTable:
    """Every prime <= limit, by sieve of Eratosthenes."""
    if limit < 2:
        raise ValueError("limit must be >= 2")
    if limit > SIEVE_LIMIT_BUDGET:
        raise ResourceLimitError(
            f"sieve limit {limit} exceeds budget {SIEVE_LIMIT_BUDGET}")
    mask = _backend.prime_mask(int(limit))
    return PrimeTable(limit=int(limit), primes=np.flatnonzero(mask).astype(np.int64))


def prime_table(limit: int) -> PrimeTable:
    """Shared prime table, grown geometrically on demand."""
    global _table
    limit = max(int(limit), 2)
    with _table_lock:
        if _table is None or _table.limit < limit:
            grown = max(limit, 1 << max(limit - 1, 1).bit_length(), 2**16)
            _table = sieve_primes(max(limit, min(grown, SIEVE_LIMIT_BUDGET)))
        return _table


def factorize(n: int | FactoredInt) -> FactoredInt:
    """Canonical factorization by trial division (inputs are desk-scale)."""
    if isinstance(n, FactoredInt):
        return n
    n = int(n)
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return FactoredInt(1, ())
    table = prime_table(math.isqrt(n) + 1)
    m = n
    factors = []
    for p in table.upto(math.isqrt(n)):
        p = int(p)
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
    if m > 1:
        factors.append((m, 1))
    return FactoredInt(n, tuple(factors))


def euler_phi(n: int | FactoredInt) -> int:
    """phi(n) = n * prod(1 - 1/p)."""
    f = factorize(n)
    out = f.n
    for p, _ in f.factors:
        out = out // p * (p - 1)
    return out


def mobius(n: int | FactoredInt) -> int:
    f = factorize(n)
    if any(e >= 2 for _, e in f.factors):
        return 0
    return -1 if len(f.factors) % 2 else 1


def divisor_count(n: int | FactoredInt) -> int:
    f = factorize(n)
    out = 1
    for _, e in f.factors:
        out *= e + 1
    return out


def von_mangoldt(n: int) -> float:
    """log p at prime powers p^k, 0 elsewhere.  Exact 0 off the support."""
    f = factorize(n)
    if len(f.factors) != 1:
        return 0.0
    return math.log(f.factors[0][0])


def von_mangoldt_k(n: int, k: int) -> float:
    """Generalized von Mangoldt value: sum over d | n of mu(d) log(n/d)^k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    f = factorize(n)
    if f.n == 1 or len(f.factors) > k:
        # mu * log^k vanishes once n has more than k distinct prime factors
        return 0.0
    total = 0.0
    for d in squarefree_divisors(f):
        total += mobius(factorize(d)) * math.log(f.n / d) ** k
    return total


def squarefree_divisors(n: int | FactoredInt) -> list[int]:
    f = factorize(n)
    divs = [1]
    for p, _ in f.factors:
        divs += [d * p for d in divs]
    return divs


def nu(n: int | FactoredInt) -> int:
    """1 iff n is squarefree with every prime factor = 3 (mod 4); nu(1) = 1."""
    f = factorize(n)
    for p, e in f.factors:
        if e >= 2 or p % 4 != 3:
            return 0
    return 1


def q3_radical(q: int | FactoredInt) -> FactoredInt:
    """Product of the distinct primes p | q with p = 3 (mod 4)."""
    f = factorize(q)
    ps = [p for p, _ in f.factors if p % 4 == 3]
    out = 1
    for p in ps:
        out *= p
    return FactoredInt(out, tuple((p, 1) for p in ps))


def r2_coprime(n: int) -> int:
    """Ordered pairs (x, y) with x^2 + y^2 = n and gcd(x, y) = 1.

    Signs count; gcd(0, k) = |k|, so n = 1 has the four representations
    (0, +-1) and (+-1, 0).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    total = 0
    for x in range(math.isqrt(n) + 1):
        y2 = n - x * x
        y = math.isqrt(y2)
        if y * y == y2 and math.gcd(x, y) == 1:
            total += (2 if x else 1) * (2 if y else 1)
    return total


def r2_coprime_table(n_max: int) -> np.ndarray:
    """r2_coprime for every n <= n_max in one pass (int64 array)."""
    if n_max > SIEVE_LIMIT_BUDGET:
        raise ResourceLimitError(
            f"r2 table size {n_max} exceeds budget {SIEVE_LIMIT_BUDGET}")
    return _backend.r2_counts(int(n_max))


def rho_weight(n: int | FactoredInt, N: int) -> float:
    """prod over p | n of log p / log N (empty product = 1)."""
    if N < 2:
        raise ValueError("N must be >= 2")
    f = factorize(n)
    out = 1.0
    for p, _ in f.factors:
        out *= math.log(p) / math.log(N)
    return out


def von_mangoldt_table(N: int) -> np.ndarray:
    """Lambda(n) for 0 <= n <= N as a float array (index 0 unused)."""
    if N > SIEVE_LIMIT_BUDGET:
        raise ResourceLimitError(f"table size {N} exceeds budget {SIEVE_LIMIT_BUDGET}")
    out = np.zeros(N + 1)
    if N < 2:
        return out
    for p in prime_table(N).upto(N):
        p = int(p)
        logp = math.log(p)
        m = p
        while m <= N:
            out[m] = logp
            m *= p
    return out
