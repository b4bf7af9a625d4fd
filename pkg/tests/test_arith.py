import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from largesieve import arith
from largesieve.arith import (FactoredInt, divisor_count, euler_phi, factorize,
                              mobius, nu, q3_radical, r2_coprime,
                              r2_coprime_table, rho_weight, sieve_primes,
                              von_mangoldt, von_mangoldt_k, von_mangoldt_table)
from largesieve.errors import ResourceLimitError


def is_prime_td(n):
    """Trial division by 6k+-1; fully independent of the sieve."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    if n % 3 == 0:
        return n == 3
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def test_sieve_small():
    assert list(sieve_primes(10).primes) == [2, 3, 5, 7]
    assert list(sieve_primes(2).primes) == [2]


def test_sieve_against_trial_division():
    table = sieve_primes(10**6)
    assert len(table) == sum(1 for n in range(2, 10**6 + 1) if is_prime_td(n))
    primes = set(table.primes.tolist())
    rng = np.random.default_rng(42)
    for n in rng.integers(2, 10**6, size=500):
        assert (int(n) in primes) == is_prime_td(int(n))


def test_sieve_budget_guard(monkeypatch):
    monkeypatch.setattr(arith, "SIEVE_LIMIT_BUDGET", 1000)
    with pytest.raises(ResourceLimitError):
        sieve_primes(10**6)


def test_factorize():
    assert factorize(1).factors == ()
    assert factorize(12).factors == ((2, 2), (3, 1))
    assert factorize(9991).factors == ((97, 1), (103, 1))
    assert factorize(2**10).factors == ((2, 10),)


def test_factored_int_invariants():
    with pytest.raises(ValueError):
        FactoredInt(12, ((3, 1), (2, 2)))  # primes must increase
    with pytest.raises(ValueError):
        FactoredInt(10, ((2, 1), (3, 1)))  # does not multiply back


def test_euler_phi():
    assert euler_phi(1) == 1
    assert euler_phi(12) == sum(1 for k in range(1, 13) if math.gcd(k, 12) == 1)
    assert euler_phi(97) == 96


def test_phi_divisor_sum_identity():
    for n in range(1, 10**4 + 1):
        assert sum(euler_phi(d) for d in factorize(n).divisors()) == n


def test_mobius():
    assert mobius(1) == 1
    assert mobius(12) == 0
    assert mobius(30) == -1


def test_mobius_divisor_sum_identity():
    for n in range(1, 10**4 + 1):
        total = sum(mobius(d) for d in factorize(n).divisors())
        assert total == (1 if n == 1 else 0)


@given(st.integers(2, 1000), st.integers(2, 1000))
@settings(max_examples=200, deadline=None)
def test_multiplicativity(m, n):
    if math.gcd(m, n) != 1:
        return
    assert euler_phi(m * n) == euler_phi(m) * euler_phi(n)
    assert divisor_count(m * n) == divisor_count(m) * divisor_count(n)
    assert mobius(m * n) == mobius(m) * mobius(n)


def test_divisor_count():
    assert divisor_count(1) == 1
    assert divisor_count(12) == 6
    assert divisor_count(2**10) == 11


def test_von_mangoldt():
    assert von_mangoldt(1) == 0.0
    assert von_mangoldt(8) == math.log(2)
    assert von_mangoldt(12) == 0.0
    assert von_mangoldt(97) == math.log(97)


def test_von_mangoldt_table_matches_pointwise():
    table = von_mangoldt_table(3000)
    for n in range(1, 3001):
        assert table[n] == von_mangoldt(n)


def test_von_mangoldt_k_examples():
    assert von_mangoldt_k(1, 1) == 0.0
    assert von_mangoldt_k(1, 3) == 0.0
    assert von_mangoldt_k(7, 1) == pytest.approx(math.log(7), abs=1e-12)
    # direct mu * log^2 evaluation at n = 12
    expect = sum(mobius(d) * math.log(12 / d) ** 2 for d in factorize(12).divisors())
    assert von_mangoldt_k(12, 2) == pytest.approx(expect, abs=1e-12)


def test_von_mangoldt_k_recurrence():
    from oracles import vm_k_recurrence_tables
    N, kmax = 10**4, 3
    tables = vm_k_recurrence_tables(N, kmax)
    for k in range(1, kmax + 1):
        direct = np.array([0.0] + [von_mangoldt_k(n, k) for n in range(1, N + 1)])
        assert np.max(np.abs(direct - tables[k])) <= 1e-8


def test_nu():
    assert nu(1) == 1
    assert nu(3) == 1
    assert nu(9) == 0
    assert nu(21) == 1
    assert nu(6) == 0  # 2 is not 3 mod 4
    for n in range(1, 500):
        if nu(n):
            assert mobius(n) ** 2 == 1
            assert all(p % 4 == 3 for p, _ in factorize(n).factors)


def test_q3_radical():
    assert q3_radical(1).n == 1
    assert q3_radical(63).n == 21
    assert q3_radical(10).n == 1
    assert q3_radical(4389).n == 4389  # 3*7*11*19, all 3 mod 4


def r2_brute(n):
    """Oracle: full scan over the lattice square."""
    count = 0
    r = math.isqrt(n)
    for x in range(-r, r + 1):
        for y in range(-r, r + 1):
            if x * x + y * y == n and math.gcd(x, y) == 1:
                count += 1
    return count


def test_r2_coprime():
    assert r2_coprime(1) == 4
    assert r2_coprime(5) == 8
    assert r2_coprime(9) == 0
    for n in range(1, 400):
        assert r2_coprime(n) == r2_brute(n)


def test_r2_table_matches_scalar():
    table = r2_coprime_table(2000)
    for n in range(1, 2001):
        assert table[n] == r2_coprime(n)


def test_rho_weight():
    assert rho_weight(1, 100) == 1.0
    assert rho_weight(7, 7) == 1.0
    expect = math.log(2) * math.log(3) / math.log(100) ** 2
    assert rho_weight(6, 100) == pytest.approx(expect, rel=1e-12)
