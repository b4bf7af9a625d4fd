"""Command-line front end: verification suites, scans, constant computations.

Reports stream as CSV (default) or JSON; identical configurations produce
byte-identical output.  Exit codes: 0 all rows pass, 1 at least one
inequality failure, 2 usage error, 3 resource guard.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from largesieve import asymptotics, exceptional, lsi
from largesieve.characters import chi4, real_primitive_characters
from largesieve.errors import DomainError, ResourceLimitError

VERIFY_COLUMNS = ["inequality", "M", "N", "Q", "extra_params", "seed",
                  "lhs", "rhs", "ratio", "pass"]

INEQUALITIES = ["mvs", "bd", "thm12", "eq14", "eq15", "eq16", "thm13",
                "prop21", "prop22", "thm21"]


def _fmt(x) -> str:
    if isinstance(x, bool):
        return str(x)
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _fold_extras(d: dict) -> str:
    parts = []
    for k in d:
        v = d[k]
        if isinstance(v, (list, tuple)):
            parts.append(f"{k}_size={len(v)}")
        elif isinstance(v, dict):
            continue
        else:
            parts.append(f"{k}={_fmt(v)}")
    return ";".join(parts)


def report_row(rep: lsi.InequalityReport, sabotage: bool = False) -> dict:
    rhs = rep.rhs * 0.5 if sabotage else rep.rhs
    if rhs == 0.0:
        ratio = 0.0 if rep.lhs == 0.0 else math.inf
    else:
        ratio = rep.lhs / rhs
    passed = (rep.lhs >= rhs * (1 - lsi.REL_TOL)) if rep.inequality_id == "eq15" \
        else (rep.lhs <= rhs * (1 + lsi.REL_TOL))
    params = dict(rep.parameters)
    extra = {k: v for k, v in params.items()
             if k not in ("M", "N", "Q", "seed")}
    extra.update(rep.extras)
    return {
        "inequality": rep.inequality_id,
        "M": params.get("M", ""),
        "N": params.get("N", ""),
        "Q": params.get("Q", ""),
        "extra_params": _fold_extras(extra),
        "seed": params.get("seed", ""),
        "lhs": rep.lhs,
        "rhs": rhs,
        "ratio": ratio,
        "pass": passed,
    }


def emit(rows: list[dict], columns: list[str], args) -> None:
    out = sys.stdout
    close = False
    if args.out:
        out = open(args.out, "w")
        close = True
    try:
        if args.format == "json":
            out.write(json.dumps(rows, default=str, indent=2))
            out.write("\n")
        else:
            out.write(",".join(columns) + "\n")
            for row in rows:
                out.write(",".join(_fmt(row.get(c, "")) for c in columns) + "\n")
    finally:
        if close:
            out.close()


def _int_list(text: str) -> list[int]:
    return [int(float(part)) for part in text.split(",") if part]


def _float_list(text: str) -> list[float]:
    return [float(part) for part in text.split(",") if part]


# ---------------------------------------------------------------------
# verify


def _verify_sequences(args, restriction=None):
    """Yield one coefficient sequence per trial (or the all-ones anchor)."""
    if args.ones:
        seq = lsi.CoefficientSequence.ones(args.N, args.M)
        if restriction is not None and restriction.kind != "none":
            seq.values[~restriction.allowed_mask(seq.n_values)] = 0.0
        yield seq
        return
    for trial in range(args.trials):
        yield lsi.random_sequence(args.N, args.M, seed=args.seed, trial=trial,
                                  restriction=restriction)


def cmd_verify(args) -> list[dict]:
    ineq = args.ineq
    reports: list[lsi.InequalityReport] = []
    if ineq == "eq15":
        reports.append(lsi.check_eq15(args.q, args.X))
    elif ineq == "thm21":
        N = args.N
        n = np.arange(1, N + 1)
        lam = exceptional.coeffs_lambda_f(max(N, 3), exceptional.indicator_function())
        a = lsi.CoefficientSequence(
            0, lam.values / np.sqrt(n) / math.log(N))
        reports.append(lsi.lsi_thm21(a, args.Q, condition_slack=args.slack))
    elif ineq in ("mvs", "bd", "thm13"):
        fn = {"mvs": lsi.lsi_mvs, "bd": lsi.lsi_bd, "thm13": lsi.lsi_thm13}[ineq]
        for seq in _verify_sequences(args):
            reports.append(fn(seq, args.Q))
    elif ineq in ("eq14", "eq16"):
        fn = lsi.lsi_eq14 if ineq == "eq14" else lsi.lsi_eq16
        restriction = lsi.SupportRestriction.rough(args.Q)
        for seq in _verify_sequences(args, restriction):
            reports.append(fn(seq, args.Q))
    elif ineq == "thm12":
        P = frozenset(_int_list(args.P))
        moduli = [q for q in range(1, args.Q + 1)
                  if all(q % p for p in P)]
        restriction = lsi.SupportRestriction.prime_free(P)
        for seq in _verify_sequences(args, restriction):
            reports.append(lsi.lsi_thm12(seq, moduli, P))
    elif ineq == "prop21":
        R_set = list(range(1, args.R + 1))
        restriction = lsi.SupportRestriction.coprime_to(R_set)
        for seq in _verify_sequences(args, restriction):
            reports.append(lsi.lsi_prop21(seq, args.Q, R_set, args.R))
    elif ineq == "prop22":
        for seq in _verify_sequences(args):
            reports.append(lsi.lsi_prop22(seq, args.Q, alpha=args.alpha))
    return [report_row(rep, sabotage=args.sabotage) for rep in reports]


# ---------------------------------------------------------------------
# constants


def cmd_constants(args) -> list[dict]:
    if args.cutoff < 10**3:
        raise DomainError("cutoff must be >= 10^3")
    rows = []
    c = asymptotics.constant_c(args.cutoff)
    rows.append({"item": "constant_c", "value": c.value, "reference": "",
                 "discrepancy": "", "tolerance": c.tail_bound, "pass": True})
    L = exceptional.L1_chiD(chi4(), args.T)
    disc = abs(L.value - math.pi / 4)
    rows.append({"item": "L1_chi4_vs_pi_over_4", "value": L.value,
                 "reference": math.pi / 4, "discrepancy": disc,
                 "tolerance": L.tail_bound, "pass": disc <= L.tail_bound})
    z = asymptotics.z_series_check(args.s, min(args.cutoff, 10**6))
    rows.append({"item": "z_series_consistency", "value": z.direct,
                 "reference": z.factored, "discrepancy": z.max_discrepancy,
                 "tolerance": z.tolerance, "pass": z.passed})
    return rows


CONSTANTS_COLUMNS = ["item", "value", "reference", "discrepancy", "tolerance", "pass"]


# ---------------------------------------------------------------------
# scans


def scan_bt(args) -> tuple[list[dict], list[str]]:
    rows = []
    for N in _int_list(args.N or "1e4"):
        M = args.M if args.M is not None else N
        bt = lsi.brun_titchmarsh(M, N)
        rows.append({"M": bt.M, "N": bt.N, "Q": bt.Q, "Q_real": bt.Q_real,
                     "prime_count": bt.prime_count, "bound": bt.bound,
                     "asymptote": bt.asymptote,
                     "ratio_to_asymptote": bt.ratio_to_asymptote,
                     "pass": bt.passed})
    return rows, ["M", "N", "Q", "Q_real", "prime_count", "bound", "asymptote",
                  "ratio_to_asymptote", "pass"]


def scan_lemma21(args) -> tuple[list[dict], list[str]]:
    qs = _int_list(args.q)
    xs = _float_list(args.x)
    points, fitted = asymptotics.lemma21_scan(qs, xs, cutoff=args.cutoff)
    rows = [{"kind": "point", **p, "pass": True} for p in points]
    rows.append({"kind": "fitted_C", "q": "", "x": "", "S_q": "", "main_term": "",
                 "deviation": "", "structured_error": "", "ratio": fitted,
                 "pass": fitted <= 10.0})
    return rows, ["kind", "q", "x", "S_q", "main_term", "deviation",
                  "structured_error", "ratio", "pass"]


def scan_exceptional(args) -> tuple[list[dict], list[str]]:
    f = exceptional.smooth_bump_function() if args.f == "bump" \
        else exceptional.indicator_function()
    rows = []
    for D in _int_list(args.D):
        n_chars = len(real_primitive_characters(D))
        for idx in range(n_chars):
            for N in _int_list(args.N or "1e4"):
                setup = exceptional.make_setup(D, N, f, char_index=idx)
                lem = exceptional.lemma31_report(setup)
                rows.append({"report": "lemma31", "D": D, "char_index": idx,
                             "N": N, "Q": setup.Q_real, "f": f.kind,
                             "lhs": lem.lhs,
                             "fitted_constant": lem.extras["fitted_kappa"],
                             "L1": lem.extras["L1"], "pass": lem.passed})
                if f.kind == "indicator":
                    prop = exceptional.prop31_report(setup)
                    rows.append({"report": "prop31", "D": D, "char_index": idx,
                                 "N": N, "Q": setup.Q_real, "f": f.kind,
                                 "lhs": prop.lhs,
                                 "fitted_constant": prop.extras["C0"],
                                 "L1": prop.extras["L1"], "pass": prop.passed})
    return rows, ["report", "D", "char_index", "N", "Q", "f", "lhs",
                  "fitted_constant", "L1", "pass"]


def scan_prop32(args) -> tuple[list[dict], list[str]]:
    rows = []
    for D in _int_list(args.D):
        for eps in _float_list(args.eps):
            lo, hi = D ** (1 / eps**2), D ** (1 / eps**3)
            N = _int_list(args.N)[0] if args.N else int(math.sqrt(lo * hi))
            if not lo < N < hi:
                N = max(int(lo) + 1, min(int(hi) - 1, N))
            rep = exceptional.prop32_check(D, eps, N, args.qmax)
            rows.append({"D": rep.D, "eps": rep.eps, "N": rep.N,
                         "effective_q_max": rep.effective_q_max,
                         "window_lo": rep.window[0], "window_hi": rep.window[1],
                         "L1_logD": rep.L1_logD, "threshold": rep.threshold,
                         "hypothesis_status": ("satisfied" if rep.hypothesis_satisfied
                                               else "not satisfied"),
                         "max_abs_sum": rep.max_abs_sum, "bound": rep.bound,
                         "pass": rep.conclusion_holds})
    return rows, ["D", "eps", "N", "effective_q_max", "window_lo", "window_hi",
                  "L1_logD", "threshold", "hypothesis_status", "max_abs_sum",
                  "bound", "pass"]


# ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="largesieve",
        description="Verify large sieve inequalities and related asymptotics.")
    parser.add_argument("--format", choices=["csv", "json"],
                        default=os.environ.get("LARGESIEVE_FORMAT", "csv"))
    parser.add_argument("--out", default=None, help="output path (default stdout)")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run one inequality over a trial grid")
    v.add_argument("--ineq", required=True, choices=INEQUALITIES)
    v.add_argument("--N", type=lambda s: int(float(s)), default=200)
    v.add_argument("--M", type=lambda s: int(float(s)), default=0)
    v.add_argument("--Q", type=lambda s: int(float(s)), default=10)
    v.add_argument("--trials", type=int, default=20)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--q", type=int, default=1, help="modulus for eq15")
    v.add_argument("--X", type=float, default=100.0, help="range for eq15")
    v.add_argument("--P", default="2,3", help="excluded primes for thm12")
    v.add_argument("--R", type=int, default=5, help="coprimality range for prop21")
    v.add_argument("--alpha", type=float, default=1.0, help="prop22 threshold constant")
    v.add_argument("--slack", type=float, default=1.0,
                   help="thm21 coefficient-condition slack factor")
    v.add_argument("--ones", action="store_true",
                   help="use the all-ones sequence instead of random trials")
    v.add_argument("--sabotage", action="store_true", help=argparse.SUPPRESS)

    c = sub.add_parser("constants", help="Euler-product constant and L-value checks")
    c.add_argument("--cutoff", type=lambda s: int(float(s)), default=10**6)
    c.add_argument("--T", type=lambda s: int(float(s)), default=10**6,
                   help="truncation for L(1, chi_4)")
    c.add_argument("--s", type=float, default=2.0, help="series comparison point")

    s = sub.add_parser("scan", help="grid scans with fitted constants")
    s.add_argument("name", choices=["bt", "lemma21", "exceptional", "prop32"])
    s.add_argument("--N", default=None, help="comma list")
    s.add_argument("--M", type=lambda x: int(float(x)), default=None)
    s.add_argument("--q", default="1,3,21,105", help="comma list (lemma21)")
    s.add_argument("--x", default="1e4,1e6", help="comma list (lemma21)")
    s.add_argument("--cutoff", type=lambda x: int(float(x)), default=10**6)
    s.add_argument("--D", default="5", help="comma list of conductors")
    s.add_argument("--f", choices=["indicator", "bump"], default="indicator")
    s.add_argument("--eps", default="0.9", help="comma list (prop32)")
    s.add_argument("--qmax", type=int, default=10)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            rows = cmd_verify(args)
            columns = VERIFY_COLUMNS
        elif args.command == "constants":
            rows = cmd_constants(args)
            columns = CONSTANTS_COLUMNS
        else:
            handler = {"bt": scan_bt, "lemma21": scan_lemma21,
                       "exceptional": scan_exceptional,
                       "prop32": scan_prop32}[args.name]
            rows, columns = handler(args)
    except ResourceLimitError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return 3
    except DomainError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    emit(rows, columns, args)
    failed = sum(1 for row in rows if row.get("pass") is False)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
