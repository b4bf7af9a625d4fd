"""Sums over squarefree products of primes = 3 (mod 4) and their asymptotics.

S_q(x) sums nu(n) tau(n) / n over n <= x coprime to q, T_q(x) drops the
divisor function, and both satisfy explicit main-term/error-term bounds
with the Euler-product constant computed here.  The generating Dirichlet
series factorizes through zeta(s)/L(s, chi_4); z_series_check verifies the
factorization numerically three ways.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from largesieve import _backend
from largesieve.arith import SIEVE_LIMIT_BUDGET, factorize, prime_table, q3_radical
from largesieve.errors import DomainError, ResourceLimitError

# cutoff used when a single value of the constant is needed internally
CONSTANT_C_CUTOFF = 10**6


@dataclass(frozen=True)
class EulerProductValue:
    """A truncated Euler product with its cutoff and tail estimate."""

    value: float
    cutoff: int
    tail_bound: float


def _primes_3mod4(x: float, exclude_divisors_of: int = 1) -> np.ndarray:
    if x > SIEVE_LIMIT_BUDGET:
        raise ResourceLimitError(f"enumeration bound {x} exceeds budget {SIEVE_LIMIT_BUDGET}")
    ps = prime_table(max(int(x), 2)).upto(x)
    ps = ps[ps % 4 == 3]
    if exclude_divisors_of > 1:
        keep = np.array([exclude_divisors_of % int(p) != 0 for p in ps], dtype=bool)
        ps = ps[keep] if ps.size else ps
    return ps


def S_q(q, x: float) -> float:
    """sum of nu(n) tau(n) / n over n <= x with (n, q) = 1."""
    if x < 1:
        raise DomainError("x must be >= 1")
    f = factorize(q)
    _, _, _, sum_tau_inv = _backend.nu_dfs(_primes_3mod4(x, f.n), math.floor(x), 1.0)
    return sum_tau_inv


def T_q(q, x: float) -> float:
    """sum of nu(n) / n over n <= x with (n, q) = 1."""
    if x < 1:
        raise DomainError("x must be >= 1")
    f = factorize(q)
    _, _, sum_inv, _ = _backend.nu_dfs(_primes_3mod4(x, f.n), math.floor(x), 1.0)
    return sum_inv


def count_nu_tau(x: float) -> int:
    """Exact sum of nu(n) tau(n) over n <= x."""
    if x < 1:
        raise DomainError("x must be >= 1")
    _, sum_tau, _, _ = _backend.nu_dfs(_primes_3mod4(x), math.floor(x), 1.0)
    return int(sum_tau)


def constant_c(cutoff: int) -> EulerProductValue:
    """Residue of the nu tau generating series at s = 1.

    (2/pi) * prod over p = 3 (mod 4), p <= cutoff, of (1 - 2/(p(p+1))),
    with tail bound 2/cutoff by integral comparison.  (The source display
    carries prefactor 3/pi, an Euler-factor slip at p = 2: nu-supported
    integers are odd, and the empirical mean of nu tau pins 2/pi.)
    """
    if cutoff < 3:
        raise DomainError("cutoff must be >= 3")
    ps = _primes_3mod4(cutoff).astype(np.float64)
    value = 2.0 / math.pi * float(np.prod(1.0 - 2.0 / (ps * (ps + 1.0))))
    return EulerProductValue(value=value, cutoff=int(cutoff), tail_bound=2.0 / cutoff)


@lru_cache(maxsize=8)
def _c_at(cutoff: int) -> float:
    return constant_c(cutoff).value


def lemma21_main_term(q, x: float, cutoff: int = CONSTANT_C_CUTOFF) -> float:
    """c * prod over p | q3 of (1 + 2/p)^-1 * log x."""
    if x < 1:
        raise DomainError("x must be >= 1")
    rad = q3_radical(q)
    out = _c_at(cutoff) * math.log(x)
    for p in rad.prime_factors:
        out /= 1.0 + 2.0 / p
    return out


@dataclass(frozen=True)
class ErrorBounds:
    """Error-term shapes for the S_q main-term approximation.

    structured: (1 + sum over p | q3 of log(p)/p) * prod over p | q3 of (1 + 2/p)
    simplified: (log log 3q)^3
    Both come without implied constants; consumers fit those empirically.
    """

    structured: float
    simplified: float


def lemma21_error(q, x: float) -> ErrorBounds:
    if x < 1:
        raise DomainError("x must be >= 1")
    rad = q3_radical(q)
    s = 1.0 + sum(math.log(p) / p for p in rad.prime_factors)
    prod = 1.0
    for p in rad.prime_factors:
        prod *= 1.0 + 2.0 / p
    n = factorize(q).n
    return ErrorBounds(structured=s * prod,
                       simplified=math.log(math.log(3 * n)) ** 3)


def lemma21_scan(qs, xs, cutoff: int = CONSTANT_C_CUTOFF):
    """Deviation |S_q(x) - main| / structured-error over a grid.

    Returns (rows, fitted_C): one dict per grid point and the single fitted
    constant max deviation/error across the grid.
    """
    rows = []
    fitted = 0.0
    for q in qs:
        err = lemma21_error(q, max(float(x) for x in xs)).structured
        for x in xs:
            x = float(x)
            s = S_q(q, x)
            main = lemma21_main_term(q, x, cutoff)
            dev = abs(s - main)
            ratio = dev / err
            fitted = max(fitted, ratio)
            rows.append({"q": int(factorize(q).n), "x": x, "S_q": s, "main_term": main,
                         "deviation": dev, "structured_error": err, "ratio": ratio})
    return rows, fitted


# ---------------------------------------------------------------------
# Dirichlet-series factorization checks


def _zeta_partial(s: float, cutoff: int) -> float:
    n = np.arange(1, cutoff + 1, dtype=np.float64)
    return float(np.sum(n**-s))


def _L_chi4_partial(s: float, cutoff: int) -> float:
    n = np.arange(1, cutoff + 1, dtype=np.float64)
    chi = np.zeros(cutoff)
    chi[0::4] = 1.0   # n = 1 (mod 4) at indices 0, 4, ...
    chi[2::4] = -1.0  # n = 3 (mod 4)
    return float(np.sum(chi * n**-s))


@dataclass
class ZSeriesReport:
    s: float
    cutoff: int
    direct: float
    euler_product: float
    factored: float
    factored_paper_variant: float
    max_discrepancy: float
    tolerance: float
    passed: bool
    two_factor: float        # 1 - 2^-s, the corrected 2-adic factor
    two_factor_paper: float  # 1 - 4^-s, as printed in the source display


def z_series_check(s: float, cutoff: int) -> ZSeriesReport:
    """Compare three evaluations of the nu tau Dirichlet series at s.

    direct: truncated series; euler_product: prod (1 + 2 p^-s) over
    p = 3 (mod 4) up to cutoff; factored: zeta(s)/L(s,chi4) times
    (1 - 2^-s) times the convergent correction product.  The variant with
    the 2-adic factor (1 - 4^-s) is reported alongside for reference; it
    overshoots by the factor (1 + 2^-s).
    """
    if s <= 1:
        raise DomainError("series diverges for s <= 1")
    if cutoff < 10**3:
        raise DomainError("cutoff must be >= 10^3")
    ps = _primes_3mod4(cutoff).astype(np.float64)
    _, _, _, direct = _backend.nu_dfs(_primes_3mod4(cutoff), float(cutoff), s)
    euler = float(np.prod(1.0 + 2.0 * ps**-s))
    zeta = _zeta_partial(s, cutoff)
    L4 = _L_chi4_partial(s, cutoff)
    corr = float(np.prod((1.0 + ps**-s - 2.0 * ps ** (-2 * s)) / (1.0 + ps**-s)))
    two = 1.0 - 2.0**-s
    two_paper = 1.0 - 4.0**-s
    factored = zeta / L4 * two * corr
    factored_paper = zeta / L4 * two_paper * corr
    # truncation tails: integral comparison for the series, with a log factor
    # for the divisor weight
    tail = 2.0 * (1.0 + math.log(cutoff)) * cutoff ** (1.0 - s) / (s - 1.0)
    vals = [direct, euler, factored]
    max_disc = max(abs(u - v) for i, u in enumerate(vals) for v in vals[i + 1:])
    return ZSeriesReport(s=s, cutoff=int(cutoff), direct=direct, euler_product=euler,
                         factored=factored, factored_paper_variant=factored_paper,
                         max_discrepancy=max_disc, tolerance=10.0 * tail,
                         passed=max_disc <= 10.0 * tail,
                         two_factor=two, two_factor_paper=two_paper)


@dataclass
class ConvolutionReport:
    q: int
    x: float
    lhs: float  # S_q(x)
    rhs: float  # sum over a <= x of f(a)/a * S(x/a)
    rel_discrepancy: float
    passed: bool


def convolution_identity_check(q, x: float, rel_tol: float = 1e-11) -> ConvolutionReport:
    """Verify S_q(x) = sum over a of f(a)/a S(x/a) exactly (finite sum).

    f is multiplicative, supported on integers composed of primes dividing
    q3, with f(p^alpha) = (-2)^alpha.
    """
    if x < 1:
        raise DomainError("x must be >= 1")
    f = factorize(q)
    lhs = S_q(f, x)
    rad = q3_radical(f).prime_factors
    terms = [(1, 1.0)]
    stack = [(0, 1, 1.0)]
    while stack:
        start, a, fa = stack.pop()
        for j in range(start, len(rad)):
            p = rad[j]
            m, fm = a, fa
            while m * p <= x:
                m *= p
                fm *= -2.0
                terms.append((m, fm))
                stack.append((j + 1, m, fm))
    rhs = 0.0
    for a, fa in sorted(terms):
        rhs += fa / a * S_q(1, x / a)
    denom = max(abs(lhs), 1e-300)
    rel = abs(lhs - rhs) / denom
    return ConvolutionReport(q=f.n, x=x, lhs=lhs, rhs=rhs, rel_discrepancy=rel,
                             passed=rel <= rel_tol)
