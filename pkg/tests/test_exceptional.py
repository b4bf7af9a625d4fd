import math

import numpy as np
import pytest

from largesieve import exceptional as ex
from largesieve.arith import factorize, mobius, von_mangoldt
from largesieve.characters import chi4, real_primitive_characters
from largesieve.errors import DomainError
from largesieve.lsi import CoefficientSequence


def test_test_functions():
    ind = ex.indicator_function()
    assert ind.A1 == ind.A2 == 1.0
    assert list(ind(np.array([-0.1, 0.0, 0.5, 1.0, 1.1]))) == [0, 1, 1, 1, 0]
    bump = ex.smooth_bump_function()
    u = np.linspace(0, 1, 101)
    fu = bump(u)
    assert np.all(fu >= 0) and np.all(fu <= 1)
    assert bump(np.array([0.5]))[0] == pytest.approx(1.0)
    assert bump.A2 < bump.A1 < 1.0
    # moments against a dense Riemann sum
    uu = np.linspace(0, 1, 200001)
    assert bump.A1 == pytest.approx(np.trapezoid(bump(uu), uu), abs=1e-8)
    assert bump.A2 == pytest.approx(np.trapezoid(bump(uu) ** 2, uu), abs=1e-8)


def test_table_function():
    f = ex.table_function([0.0, 0.5, 1.0], [0.0, 1.0, 0.0])
    assert f.A1 == pytest.approx(0.5, abs=1e-6)
    with pytest.raises(DomainError):
        ex.table_function([0.0, 1.0], [0.0, 2.0])


def test_coeffs_lambda_f():
    a = ex.coeffs_lambda_f(10, ex.indicator_function())
    for n in range(1, 11):
        assert a.values[n - 1].real == pytest.approx(von_mangoldt(n), abs=1e-12)
    assert a.values[0] == 0.0  # Lambda(1) = 0
    # Chebyshev psi at 1e5 sits within 1% of N
    a = ex.coeffs_lambda_f(10**5, ex.indicator_function())
    assert abs(a.total().real - 10**5) / 10**5 < 0.01


def test_psi_moment_deviations_shrink():
    # sum a_n / N -> 1 and sum a_n^2 / (N log N) -> 1, monotone in N
    dev1, dev2 = [], []
    for N in (10**4, 10**5, 10**6):
        a = ex.coeffs_lambda_f(N, ex.indicator_function())
        dev1.append(abs(a.total().real / N - 1))
        dev2.append(abs(a.norm_sq / (N * math.log(N)) - 1))
    assert dev1[0] > dev1[1] > dev1[2]
    assert dev2[0] > dev2[1] > dev2[2]


def test_one_plus_chi():
    c5 = real_primitive_characters(5)[0]
    assert ex.one_plus_chi(2, c5) == 0.0   # chi(2) = -1
    assert ex.one_plus_chi(5, c5) == 1.0   # gcd > 1
    assert ex.one_plus_chi(1, c5) == 2.0


def test_lambda_conv():
    c5 = real_primitive_characters(5)[0]
    assert ex.lambda_conv(1, c5) == 1.0
    for p in (2, 3, 7, 11, 13):
        assert ex.lambda_conv(p, c5) == 1.0 + c5(p).real


@pytest.mark.parametrize("D", [4, 5, 8, 12])
def test_mobius_inversion(D):
    for chi in real_primitive_characters(D):
        for n in range(1, 501):
            back = sum(mobius(n // d) * ex.lambda_conv(d, chi)
                       for d in factorize(n).divisors())
            assert back == pytest.approx(chi(n).real, abs=1e-9)


def test_lambda_partial_sum_matches_brute():
    c5 = real_primitive_characters(5)[0]
    brute = sum(ex.lambda_conv(n, c5) for n in range(1, 201))
    assert ex.lambda_partial_sum(200, c5) == pytest.approx(brute, abs=1e-9)


def test_lambda_partial_sum_error_shape():
    # |sum lambda(n) - L(1,chi_D) N| <= kappa sqrt(N) D^(1/4) log N
    for D in (4, 5, 8):
        for chi in real_primitive_characters(D):
            L1 = ex.L1_chiD(chi).value
            for N in (10**4, 10**6):
                err = abs(ex.lambda_partial_sum(N, chi) - L1 * N)
                assert err <= 2.0 * math.sqrt(N) * D**0.25 * math.log(N)


def test_L1_chi4_leibniz():
    L = ex.L1_chiD(chi4(), 10**6)
    assert abs(L.value - math.pi / 4) <= 4e-6
    assert L.tail_bound == pytest.approx(4e-6)


def test_L1_stability_and_tail():
    c5 = real_primitive_characters(5)[0]
    L1 = ex.L1_chiD(c5, 10**6)
    L2 = ex.L1_chiD(c5, 2 * 10**6)
    assert L1.value > 0
    assert abs(L1.value - L2.value) <= 5 / 10**6
    assert L2.tail_bound == pytest.approx(L1.tail_bound / 2)
    with pytest.raises(DomainError):
        ex.L1_chiD(c5, 20)  # below D^2


def test_eq37():
    c5 = real_primitive_characters(5)[0]
    rep = ex.eq37_check(CoefficientSequence.zeros(10), c5)
    assert rep.passed and rep.lhs == 0.0 and rep.rhs == 0.0
    a = ex.coeffs_lambda_f(10**4, ex.indicator_function())
    assert ex.eq37_check(a, c5).passed
    # support where chi_D = -1: rho-sum vanishes and equality holds
    vals = np.zeros(20, dtype=np.complex128)
    for n in range(1, 21):
        if c5(n).real == -1.0:
            vals[n - 1] = 1.0
    rep = ex.eq37_check(CoefficientSequence(0, vals), c5)
    assert rep.extras["rho_sum"] == pytest.approx(0.0, abs=1e-12)
    assert rep.lhs == pytest.approx(rep.rhs, rel=1e-12)
    with pytest.raises(DomainError):
        ex.eq37_check(CoefficientSequence(0, np.array([1j])), c5)


def test_make_setup_validation():
    with pytest.raises(DomainError):
        ex.make_setup(6, 10**4)  # no real primitive character mod 6
    with pytest.raises(DomainError):
        ex.make_setup(12, 10**4)  # 12 > sqrt(N)/log N ~ 10.9
    setup = ex.make_setup(5, 10**4)
    assert setup.Q == 10 and setup.chi_D.modulus == 5


def test_lemma31_and_prop31():
    setup = ex.make_setup(5, 10**4)
    rep = ex.lemma31_report(setup)
    assert rep.passed
    assert rep.extras["A1"] == rep.extras["A2"] == 1.0
    assert abs(rep.extras["fitted_kappa"]) < 50
    bump_setup = ex.make_setup(5, 10**4, ex.smooth_bump_function())
    bump_rep = ex.lemma31_report(bump_setup)
    assert bump_rep.extras["A2"] < bump_rep.extras["A1"]
    assert bump_rep.extras["main_term_1"] < rep.extras["main_term_1"]
    prop = ex.prop31_report(setup)
    assert prop.passed and prop.lhs >= 0
    with pytest.raises(DomainError):
        ex.prop31_report(bump_setup)  # indicator weight required


def test_prop31_excluding_chi_D_decreases_lhs():
    setup = ex.make_setup(5, 10**4)
    a = ex.coeffs_lambda_f(setup.N, setup.f)
    with_exclusion = ex._log_weighted_lhs(a, setup.Q_real, setup.chi_D)
    without = ex._log_weighted_lhs(a, setup.Q_real, None)
    assert with_exclusion <= without


def test_prop32_guard_paths():
    with pytest.raises(DomainError):
        ex.prop32_check(5, 0.9, 100, 10)  # outside the window
    rep = ex.prop32_check(5, 0.9, 8, 10)
    assert not rep.hypothesis_satisfied
    assert not rep.conclusion_tested
    assert rep.L1_logD == pytest.approx(
        ex.L1_chiD(real_primitive_characters(5)[0]).value * math.log(5), rel=1e-9)
    assert rep.threshold == pytest.approx(0.9**5)
    with pytest.raises(DomainError):
        ex.prop32_check(5, 1.2, 8, 10)


def test_prime_indicator_and_eq31():
    a = ex.prime_indicator(10, 20)  # primes in (10, 30]
    assert list(a.n_values[np.abs(a.values) > 0]) == [11, 13, 17, 19, 23, 29]
    c5 = real_primitive_characters(5)[0]
    Q = math.sqrt(10**4) / math.log(10**4)
    rep = ex.eq31_check(ex.prime_indicator(1000, 10**4), Q, c5)
    assert rep.passed
    assert rep.extras["prime_count"] == 1167  # pi(11000) - pi(1000)


def test_eq31_empty_interval():
    c4 = chi4()
    a = ex.prime_indicator(114, 12)  # (114, 126] holds no prime
    rep = ex.eq31_check(a, 4.0, c4)
    assert rep.lhs == rep.rhs == 0.0 and rep.passed


def test_eq31_lambda_term_vanishes():
    # primes 2, 3 are both non-residues mod 5
    c5 = real_primitive_characters(5)[0]
    a = ex.prime_indicator(1, 3)  # primes in (1, 4] = {2, 3}
    rep = ex.eq31_check(a, 5.0, c5)
    assert rep.extras["lambda_sum"] == 0.0
    assert rep.passed


def test_eq31_validation():
    c5 = real_primitive_characters(5)[0]
    with pytest.raises(DomainError):
        ex.eq31_check(CoefficientSequence.ones(10), 6.0, c5)  # not an indicator
    a = ex.prime_indicator(0, 30)
    a.values[0] = 1.0  # n = 1 is not prime
    with pytest.raises(DomainError):
        ex.eq31_check(a, 6.0, c5)
    b = ex.prime_indicator(0, 30)
    b.values[1] = 0.0  # drops the prime 2
    with pytest.raises(DomainError):
        ex.eq31_check(b, 6.0, c5)
    with pytest.raises(DomainError):
        ex.eq31_check(ex.prime_indicator(0, 30), 3.0, c5)  # D > Q
