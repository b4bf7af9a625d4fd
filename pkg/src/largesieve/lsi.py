"""Large sieve inequality evaluators.

Each evaluator computes the exact left and right sides of one inequality
for a concrete coefficient sequence and returns an InequalityReport.  The
(q, chi) grid is always reduced in ascending q, then character index, so
reported values are reproducible bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from largesieve import arith, expsums
from largesieve.arith import euler_phi, factorize, mobius, prime_table
from largesieve.characters import DirichletCharacter, group, is_primitive
from largesieve.errors import DomainError, SupportError

REL_TOL = 1e-9


# ---------------------------------------------------------------------
# data types


@dataclass
class CoefficientSequence:
    """Complex coefficients a_n supported on (M, M+N]."""

    M: int
    values: np.ndarray  # complex128, entry i is a_{M+1+i}
    seed: int | None = None
    trial: int | None = None

    def __post_init__(self):
        self.values = np.ascontiguousarray(self.values, dtype=np.complex128)

    @property
    def N(self) -> int:
        return int(self.values.shape[0])

    @property
    def n_values(self) -> np.ndarray:
        return np.arange(self.M + 1, self.M + self.N + 1, dtype=np.int64)

    @property
    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2))

    def total(self) -> complex:
        return complex(self.values.sum())

    @classmethod
    def ones(cls, N: int, M: int = 0) -> CoefficientSequence:
        return cls(M, np.ones(N, dtype=np.complex128))

    @classmethod
    def zeros(cls, N: int, M: int = 0) -> CoefficientSequence:
        return cls(M, np.zeros(N, dtype=np.complex128))


def random_sequence(N: int, M: int = 0, seed: int = 0, trial: int = 0,
                    restriction: SupportRestriction | None = None) -> CoefficientSequence:
    """Seeded complex-Gaussian coefficients, zeroed off the allowed support.

    Each (seed, trial) pair keys an independent generator stream, so trials
    share no state and every run is reproducible.
    """
    rng = np.random.default_rng([seed, trial, N, M])
    vals = (rng.standard_normal(N) + 1j * rng.standard_normal(N)) / math.sqrt(2)
    seq = CoefficientSequence(M, vals, seed=seed, trial=trial)
    if restriction is not None and restriction.kind != "none":
        seq.values[~restriction.allowed_mask(seq.n_values)] = 0.0
    return seq


@dataclass(frozen=True)
class SupportRestriction:
    """Which n may carry nonzero coefficients."""

    kind: str  # "none" | "prime_free" | "coprime_to"
    primes: frozenset = frozenset()
    moduli: frozenset = frozenset()

    @classmethod
    def none(cls) -> SupportRestriction:
        return cls("none")

    @classmethod
    def prime_free(cls, primes) -> SupportRestriction:
        return cls("prime_free", primes=frozenset(int(p) for p in primes))

    @classmethod
    def rough(cls, Q: int) -> SupportRestriction:
        """No prime divisors <= Q."""
        return cls.prime_free(int(p) for p in prime_table(max(Q, 2)).upto(Q))

    @classmethod
    def coprime_to(cls, moduli) -> SupportRestriction:
        return cls("coprime_to", moduli=frozenset(int(r) for r in moduli))

    def allowed_mask(self, n: np.ndarray) -> np.ndarray:
        mask = np.ones(n.shape, dtype=bool)
        if self.kind == "prime_free":
            for p in sorted(self.primes):
                mask &= n % p != 0
        elif self.kind == "coprime_to":
            for r in sorted(self.moduli):
                mask &= np.gcd(n, r) == 1
        return mask

    def validate(self, a: CoefficientSequence, context: str) -> None:
        if self.kind == "none":
            return
        n = a.n_values
        bad = n[(np.abs(a.values) > 0) & ~self.allowed_mask(n)]
        if bad.size:
            raise SupportError(
                f"{context}: {bad.size} coefficients violate the support "
                f"condition (first at n={int(bad[0])})")


@dataclass
class InequalityReport:
    """One verification record for a single inequality instance."""

    inequality_id: str
    parameters: dict
    lhs: float
    rhs: float
    ratio: float
    passed: bool
    extras: dict = field(default_factory=dict)


def make_report(inequality_id: str, parameters: dict, lhs: float, rhs: float,
                direction: str = "le", extras: dict | None = None) -> InequalityReport:
    if rhs == 0.0:
        ratio = 0.0 if lhs == 0.0 else math.inf
    else:
        ratio = lhs / rhs
    if direction == "le":
        passed = lhs <= rhs * (1 + REL_TOL)
    elif direction == "ge":
        passed = lhs >= rhs * (1 - REL_TOL)
    else:
        raise ValueError(f"unknown direction {direction!r}")
    return InequalityReport(inequality_id, dict(parameters), float(lhs), float(rhs),
                            float(ratio), bool(passed), extras or {})


# ---------------------------------------------------------------------
# character-sum plumbing


def residue_sums(a: CoefficientSequence, q: int) -> np.ndarray:
    """b_u = sum of a_n over n = u (mod q), u = 0..q-1."""
    r = (a.n_values % q).astype(np.int64)
    return (np.bincount(r, weights=a.values.real, minlength=q)
            + 1j * np.bincount(r, weights=a.values.imag, minlength=q))


def char_sum(chi: DirichletCharacter, a: CoefficientSequence) -> complex:
    """sum over M < n <= M+N of a_n chi(n)."""
    q = chi.modulus
    if q == 1:
        return a.total()
    return complex(chi.values() @ residue_sums(a, q))


def primitive_char_sums(a: CoefficientSequence, q: int):
    """(primitive characters mod q, their coefficient sums) in group order."""
    g = group(q)
    chars = [chi for chi in g.characters() if is_primitive(chi)]
    if not chars:
        return chars, np.zeros(0, dtype=np.complex128)
    if q == 1:
        return chars, np.array([a.total()])
    V = g.value_matrix(chars)
    return chars, V @ residue_sums(a, q)


def sum_sq_primitive(a: CoefficientSequence, q: int) -> float:
    _, sums = primitive_char_sums(a, q)
    return float(np.sum(np.abs(sums) ** 2))


def _squarefree_phi_sum(X: float, q: int) -> float:
    """sum over squarefree r <= X with (r, q) = 1 of 1/phi(r)."""
    total = 0.0
    for r in range(1, math.floor(X) + 1):
        if q > 1 and math.gcd(r, q) != 1:
            continue
        f = factorize(r)
        if any(e >= 2 for _, e in f.factors):
            continue
        total += 1.0 / euler_phi(f)
    return total


# ---------------------------------------------------------------------
# the inequalities of the introduction


def lsi_mvs(a: CoefficientSequence, Q: int) -> InequalityReport:
    """Montgomery-Vaughan/Selberg form: RHS weight N + Q^2."""
    if Q < 1:
        raise DomainError("Q must be >= 1")
    lhs = sum(q / euler_phi(q) * sum_sq_primitive(a, q) for q in range(1, Q + 1))
    rhs = (a.N + Q * Q) * a.norm_sq
    return make_report("mvs", _params(a, Q=Q), lhs, rhs)


def lsi_bd(a: CoefficientSequence, Q: int) -> InequalityReport:
    """Original Bombieri-Davenport form: RHS weight (sqrt(N) + Q)^2."""
    if Q < 1:
        raise DomainError("Q must be >= 1")
    lhs = sum(q / euler_phi(q) * sum_sq_primitive(a, q) for q in range(1, Q + 1))
    rhs = (math.sqrt(a.N) + Q) ** 2 * a.norm_sq
    return make_report("bd", _params(a, Q=Q), lhs, rhs)


def lsi_thm12(a: CoefficientSequence, moduli, excluded_primes) -> InequalityReport:
    """Gauss-sum weighted sieve over a prime-avoiding modulus set.

    Both the moduli and the coefficient support must avoid every prime in
    excluded_primes; all characters mod q enter, weighted |tau(chi)|^2/phi(q).
    """
    moduli = sorted(int(q) for q in moduli)
    P = frozenset(int(p) for p in excluded_primes)
    for q in moduli:
        if any(q % p == 0 for p in P):
            raise DomainError(f"modulus {q} has a prime divisor in the excluded set")
    SupportRestriction.prime_free(P).validate(a, "thm12")
    lhs = 0.0
    for q in moduli:
        chars, taus = expsums.gauss_sums_all(q)
        if q == 1:
            sums = np.array([a.total()])
        else:
            sums = group(q).value_matrix(chars) @ residue_sums(a, q)
        lhs += float(np.sum(np.abs(taus) ** 2 * np.abs(sums) ** 2)) / euler_phi(q)
    Q = max(moduli, default=0)
    rhs = (math.sqrt(a.N) + Q) ** 2 * a.norm_sq
    return make_report("thm12", _params(a, Q=Q, num_moduli=len(moduli),
                                        num_excluded_primes=len(P)), lhs, rhs)


def lsi_eq14(a: CoefficientSequence, Q: int) -> InequalityReport:
    """Induced-character double sum with weights q mu^2(r) / phi(qr)."""
    if Q < 1:
        raise DomainError("Q must be >= 1")
    SupportRestriction.rough(Q).validate(a, "eq14")
    lhs = 0.0
    for q in range(1, Q + 1):
        w = q / euler_phi(q) * _squarefree_phi_sum(Q // q, q)
        lhs += w * sum_sq_primitive(a, q)
    rhs = (math.sqrt(a.N) + Q) ** 2 * a.norm_sq
    return make_report("eq14", _params(a, Q=Q), lhs, rhs)


def check_eq15(q: int, X: float) -> InequalityReport:
    """Lower bound sum over squarefree r <= X coprime to q of 1/phi(r).

    Reversed direction: pass means lhs >= rhs (1 - tol).
    """
    if X < 1:
        raise DomainError("X must be >= 1")
    lhs = _squarefree_phi_sum(X, q)
    rhs = euler_phi(q) / q * math.log(X)
    return make_report("eq15", {"q": q, "X": X}, lhs, rhs, direction="ge")


def lsi_eq16(a: CoefficientSequence, Q: int) -> InequalityReport:
    """Log-weighted sieve: weights log(Q/q) over primitive characters."""
    if Q < 1:
        raise DomainError("Q must be >= 1")
    SupportRestriction.rough(Q).validate(a, "eq16")
    lhs = sum(math.log(Q / q) * sum_sq_primitive(a, q) for q in range(1, Q + 1))
    rhs = (math.sqrt(a.N) + Q) ** 2 * a.norm_sq
    return make_report("eq16", _params(a, Q=Q), lhs, rhs)


def lsi_thm13(a: CoefficientSequence, Q: int) -> InequalityReport:
    """Ramanujan-sum twisted sieve with RHS weight N + Q^2."""
    if Q < 1:
        raise DomainError("Q must be >= 1")
    lhs = 0.0
    for q in range(1, Q + 1):
        g = group(q)
        prim = [chi for chi in g.characters() if is_primitive(chi)]
        if not prim:
            continue
        for r in range(1, Q // q + 1):
            if math.gcd(q, r) != 1:
                continue
            m = q * r
            b = residue_sums(a, m)
            u = np.arange(m, dtype=np.int64)
            cr = expsums.ramanujan_table(r)[u % r]
            if q == 1:
                sums = np.array([np.sum(cr * b)])
            else:
                V = g.value_matrix(prim)[:, u % q] * cr
                sums = V @ b
            lhs += q / euler_phi(m) * float(np.sum(np.abs(sums) ** 2))
    rhs = (a.N + Q * Q) * a.norm_sq
    return make_report("thm13", _params(a, Q=Q), lhs, rhs)


# ---------------------------------------------------------------------
# restricted-support machinery (Section 2)


def script_L_q(q: int, R_set) -> float:
    """(q/phi(q)) * sum over squarefree r in R_set coprime to q of 1/phi(r)."""
    total = 0.0
    for r in sorted(int(r) for r in R_set):
        if q > 1 and math.gcd(r, q) != 1:
            continue
        if mobius(r) == 0:
            continue
        total += 1.0 / euler_phi(r)
    return q / euler_phi(q) * total


def script_L(Q: int, R_set) -> float:
    """Minimum of script_L_q over q <= Q."""
    if Q < 1:
        raise DomainError("Q must be >= 1")
    return min(script_L_q(q, R_set) for q in range(1, Q + 1))


def lsi_prop21(a: CoefficientSequence, Q: int, R_set, R: int) -> InequalityReport:
    """Unit-weight sieve for support coprime to every element of R_set."""
    if Q < 1:
        raise DomainError("Q must be >= 1")
    R_set = sorted(int(r) for r in R_set)
    if any(r > R for r in R_set):
        raise DomainError(f"R_set contains an element above R = {R}")
    SupportRestriction.coprime_to(R_set).validate(a, "prop21")
    lhs = sum(sum_sq_primitive(a, q) for q in range(1, Q + 1))
    L = script_L(Q, R_set)
    rhs = math.inf if L == 0 else (Q * Q * R * R + a.N) / L * a.norm_sq
    return make_report("prop21", _params(a, Q=Q, R=R, R_set_size=len(R_set)),
                       lhs, rhs, extras={"script_L": L})


def nu_supported_upto(R: float, exclude_divisors_of: int = 1) -> list[int]:
    """Squarefree products of primes = 3 (mod 4) up to R (1 included)."""
    ps = [int(p) for p in prime_table(max(int(R), 2)).upto(R)
          if p % 4 == 3 and exclude_divisors_of % int(p) != 0]
    out = [1]
    stack = [(0, 1)]
    while stack:
        start, n = stack.pop()
        for j in range(start, len(ps)):
            m = n * ps[j]
            if m > R:
                break
            out.append(m)
            stack.append((j + 1, m))
    return sorted(out)


def lsi_prop22(a: CoefficientSequence, Q: int, alpha: float = 1.0) -> InequalityReport:
    """Sieve weighted by coprime two-square representation counts r(n).

    The stored coefficients are the a_n; the sieve is applied to r(n) a_n.
    alpha is the unspecified threshold constant: the guard requires
    N >= Q^2 exp((alpha log log Q)^3).
    """
    if Q < 1:
        raise DomainError("Q must be >= 1")
    N = a.N
    if Q == 1:
        threshold = 0.0
    else:
        threshold = Q * Q * math.exp((alpha * math.log(math.log(Q))) ** 3)
    if N < threshold or N <= Q * Q:
        raise DomainError(
            f"prop22 requires N >= Q^2 exp((alpha log log Q)^3) = {threshold:.6g} "
            f"and N > Q^2; got N = {N}")
    r_table = arith.r2_coprime_table(a.M + N)
    r_n = r_table[a.n_values].astype(np.float64)
    weighted = CoefficientSequence(a.M, r_n * a.values)
    lhs = sum(sum_sq_primitive(weighted, q) for q in range(1, Q + 1))
    denom = math.sqrt(math.log(N / (Q * Q)))
    rhs = 2 * N / denom * float(np.sum(r_n**2 * np.abs(a.values) ** 2))
    R = math.sqrt(N) / Q
    R_set = nu_supported_upto(R)
    return make_report("prop22", _params(a, Q=Q, alpha=alpha), lhs, rhs,
                       extras={"R": R, "R_set": R_set,
                               "script_L": script_L(Q, R_set)})


# ---------------------------------------------------------------------
# Theorem 2.1: almost-prime coefficient sieve


@dataclass
class ConditionCheck:
    """Outcome of the almost-prime coefficient conditions."""

    ok: bool
    witness: int | None  # smallest violating prime, None if ok
    norm_sq: float
    worst_ratio: float  # max over p of (divisible-mass sum) / (bound at p)
    worst_p: int | None


def thm21_conditions(a: CoefficientSequence, slack: float = 1.0) -> ConditionCheck:
    """Check sum |a_n|^2 <= slack and the per-prime divisible-mass bounds.

    The second condition demands, for every prime p <= N, that the mass on
    multiples of p be at most slack * (1/p)(log p / log N)^2.
    """
    N = a.N
    logN = math.log(N) if N > 1 else 1.0
    abs2 = np.abs(a.values) ** 2
    norm_sq = float(abs2.sum())
    ok = norm_sq <= slack * (1 + REL_TOL)
    witness = None
    worst_ratio = norm_sq
    worst_p = None
    for p in prime_table(max(N, 2)).upto(N):
        p = int(p)
        first = (a.M // p + 1) * p  # smallest multiple of p above M
        if first > a.M + N:
            continue
        mass = float(abs2[first - a.M - 1 :: p].sum())
        bound = (math.log(p) / logN) ** 2 / p
        ratio = mass / bound
        if ratio > worst_ratio:
            worst_ratio = ratio
            worst_p = p
        if mass > slack * bound * (1 + REL_TOL) and witness is None:
            witness = p
            ok = False
    return ConditionCheck(ok, witness, norm_sq, worst_ratio, worst_p)


def lsi_thm21(a: CoefficientSequence, Q: int,
              condition_slack: float = 1.0) -> InequalityReport:
    """Sieve bound 24 N / log(N/Q^2) for almost-prime-supported coefficients."""
    N = a.N
    if 8 * Q * Q > N:
        raise DomainError(f"thm21 requires 8 Q^2 <= N; got Q = {Q}, N = {N}")
    check = thm21_conditions(a, slack=condition_slack)
    if not check.ok:
        raise DomainError(
            "thm21 coefficient conditions fail"
            + (f" at witness prime p = {check.witness}" if check.witness is not None
               else f": sum |a_n|^2 = {check.norm_sq:.6g} > {condition_slack}"))
    lhs = sum(sum_sq_primitive(a, q) for q in range(1, Q + 1))
    rhs = 24 * N / math.log(N / (Q * Q))
    empirical = lhs * math.log(N / (Q * Q)) / N
    return make_report("thm21", _params(a, Q=Q, condition_slack=condition_slack),
                       lhs, rhs,
                       extras={"split_R": (N / (Q * Q)) ** (1 / 3),
                               "empirical_constant": empirical,
                               "condition_worst_ratio": check.worst_ratio,
                               "condition_worst_p": check.worst_p})


# ---------------------------------------------------------------------
# Brun-Titchmarsh


@dataclass
class BrunTitchmarshReport:
    M: int
    N: int
    Q: int
    Q_real: float
    prime_count: int
    bound: float
    asymptote: float  # 2N / log N
    ratio_to_asymptote: float
    passed: bool
    eq16_report: InequalityReport | None = None


def brun_titchmarsh(M: int, N: int, verify_chain: bool = True) -> BrunTitchmarshReport:
    """Count primes in (M, M+N] and compare with the sieve-derived bound.

    The bound comes from keeping only the principal-character term of the
    log-weighted sieve with Q = sqrt(N)/log N:
        log(Q) count^2 <= (sqrt(N)+Q)^2 count,
    so count <= (sqrt(N)+Q)^2 / log Q.
    """
    if N < 100:
        raise DomainError("N must be >= 100")
    if M <= math.sqrt(N):
        raise DomainError(f"requires M > sqrt(N); got M = {M}, sqrt(N) = {math.sqrt(N):.2f}")
    Q_real = math.sqrt(N) / math.log(N)
    Q = max(2, math.floor(Q_real))
    table = arith.sieve_primes(M + N)
    ps = table.primes
    count = int(np.searchsorted(ps, M + N, side="right")
                - np.searchsorted(ps, M, side="right"))
    bound = (math.sqrt(N) + Q) ** 2 / math.log(Q)
    asymptote = 2 * N / math.log(N)
    eq16_report = None
    passed = count <= bound
    if verify_chain:
        vals = np.zeros(N, dtype=np.complex128)
        in_range = ps[(ps > M) & (ps <= M + N)]
        vals[in_range - M - 1] = 1.0
        seq = CoefficientSequence(M, vals)
        eq16_report = lsi_eq16(seq, Q)
        # principal-term extraction must sit below the full left side
        principal = math.log(Q) * count * count
        passed = passed and eq16_report.passed and principal <= eq16_report.lhs * (1 + REL_TOL)
    return BrunTitchmarshReport(M, N, Q, Q_real, count, bound, asymptote,
                                bound / asymptote, passed, eq16_report)


# ---------------------------------------------------------------------


def _params(a: CoefficientSequence, **kw) -> dict:
    out = {"M": a.M, "N": a.N}
    if a.seed is not None:
        out["seed"] = a.seed
    if a.trial is not None:
        out["trial"] = a.trial
    out.update(kw)
    return out
