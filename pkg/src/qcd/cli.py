"""``qcd`` command line: tables, exact verification suites, p-adic cross-checks.

Exit codes: 0 every case passed, 1 some case failed, 2 configuration error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
import time
from fractions import Fraction
from pathlib import Path

from . import combinatorics as comb
from . import q_families as qf
from .errors import QCDError
from .exact_arith import format_rational, parse_rational
from .padic_lab import PADIC_CHECKS, padic_suite

FAMILIES = ("catalan", "stirling1", "stirling2", "bernoulli", "dn", "dnq", "bnq", "daehee1", "daehee2", "dnqx")
SUITES = ("thm1", "thm2", "cor3", "thm4", "thm5", "eq20", "eq21", "limits")


class ConfigError(Exception):
    pass


# --- tables ----------------------------------------------------------------

def _series_row(prefix: list, s) -> list:
    return prefix + [s.prec, ";".join(format_rational(c) for c in s.coeffs)]


def build_table(family: str, n_max: int, u_prec: int, lam: Fraction | None = None) -> tuple[list[str], list[list]]:
    """Header and rows for a family; rationals and u-series are rendered as strings."""
    if family not in FAMILIES:
        raise ConfigError(f"unknown family {family!r}")
    if n_max < 0 or u_prec < 1:
        raise ConfigError("need n_max >= 0 and u_prec >= 1")
    ns = range(n_max + 1)
    if family == "catalan":
        return ["n", "value"], [[n, format_rational(comb.catalan(n))] for n in ns]
    if family == "bernoulli":
        return ["n", "value"], [[n, format_rational(comb.classical_bernoulli(n))] for n in ns]
    if family == "dn":
        return ["n", "value"], [[n, format_rational(comb.classical_catalan_daehee(n))] for n in ns]
    if family in ("stirling1", "stirling2"):
        fn = comb.stirling_first if family == "stirling1" else comb.stirling_second
        return ["n", "m", "value"], [[n, m, str(fn(n, m))] for n in ns for m in range(n + 1)]
    cfg = qf.QFamilyConfig(n_max=n_max, u_prec=u_prec)
    if family == "dnq":
        return ["n", "prec", "coeffs"], [_series_row([n], qf.qcd_direct(n, cfg)) for n in ns]
    if family == "bnq":
        return ["n", "prec", "coeffs"], [_series_row([n], qf.q_bernoulli(n, cfg)) for n in ns]
    if family == "dnqx":
        polys = [(n, qf.qcd_poly_direct(n, cfg)) for n in ns]
    else:
        lam = Fraction(1) if lam is None else lam
        fn = qf.daehee_type1 if family == "daehee1" else qf.daehee_type2
        polys = [(n, fn(n, lam, cfg)) for n in ns]
    rows = [_series_row([n, l], poly[l]) for n, poly in polys for l in range(poly.degree + 1)]
    return ["n", "x_power", "prec", "coeffs"], rows


def _render_table(family, header, rows, fmt, config) -> str:
    if fmt == "json":
        records = []
        for row in rows:
            rec = dict(zip(header, row))
            if "coeffs" in rec:
                rec["coeffs"] = rec["coeffs"].split(";")
            records.append(rec)
        return json.dumps({"family": family, "config": config, "rows": records}, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _write_atomic(path: str, text: str) -> None:
    if path in ("-", ""):
        sys.stdout.write(text)
        return
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cmd_table(args) -> int:
    lam = parse_rational(args.lam) if args.lam is not None else None
    header, rows = build_table(args.family, args.n_max, args.u_prec, lam)
    config = {"n_max": args.n_max, "u_prec": args.u_prec}
    if lam is not None:
        config["lambda"] = format_rational(lam)
    text = _render_table(args.family, header, rows, args.format, config)
    if args.out not in ("-", "") and not Path(args.out).parent.exists():
        raise ConfigError(f"directory of {args.out!r} does not exist")
    _write_atomic(args.out, text)
    return 0


# --- verification ----------------------------------------------------------

def _case(case_id: str, fn) -> dict:
    try:
        ok, detail = fn()
    except QCDError as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return {"id": case_id, "status": "pass" if ok else "fail", "detail": detail}


def _equal(a, b) -> tuple[bool, str]:
    return (a == b), ("" if a == b else f"{a!r} != {b!r}")


def suite_cases(suite: str, cfg: qf.QFamilyConfig) -> list[dict]:
    ns = range(cfg.n_max + 1)
    if suite == "thm1":
        return [_case(f"thm1[n={n}]", lambda n=n: _equal(qf.qcd_theorem1(n, cfg), qf.qcd_direct(n, cfg))) for n in ns]
    if suite == "thm2":
        return [_case(f"thm2[n={n}]", lambda n=n: _equal(qf.qcd_theorem2(n, cfg), qf.qcd_direct(n, cfg))) for n in ns]
    if suite == "cor3":
        return [_case(f"cor3[n={n}]", lambda n=n: (qf.corollary3_value(n, cfg) is not None, "")) for n in ns]
    if suite == "thm4":
        return [_case(f"thm4[n={n}]", lambda n=n: _report(qf.theorem4_check(n, cfg, strict=False))) for n in ns]
    if suite == "eq20":
        return [_case(f"eq20[n={n}]", lambda n=n: _report(qf.eq20_relation(n, cfg, strict=False))) for n in ns]
    if suite == "thm5":
        return [_case(f"thm5[n={n}]", lambda n=n: _thm5(n, cfg)) for n in ns]
    if suite == "eq21":
        composed, egf = qf.eq21_composition(cfg.n_max, cfg)
        return [_case(f"eq21[t^{n}]", lambda n=n: _equal(composed[n], egf[n])) for n in ns]
    if suite == "limits":
        cases = [_case(f"limits.d[n={n}]", lambda n=n: _equal(
            qf.qcd_direct(n, cfg).classical_limit(), comb.classical_catalan_daehee(n))) for n in ns]
        cases += [_case(f"limits.B[n={n}]", lambda n=n: _equal(
            qf.q_bernoulli(n, cfg).classical_limit(), comb.classical_bernoulli(n))) for n in ns]
        return cases
    raise ConfigError(f"unknown suite {suite!r}")


def _report(rep: qf.CheckReport) -> tuple[bool, str]:
    return rep.passed, rep.detail


def _thm5(n: int, cfg: qf.QFamilyConfig) -> tuple[bool, str]:
    direct = qf.qcd_poly_direct(n, cfg)
    via_stirling = qf.qcd_poly_theorem5(n, cfg, strict=False)
    problems = []
    if direct != via_stirling:
        problems.append("coefficient mismatch")
    if direct.at(0) != qf.qcd_direct(n, cfg):
        problems.append("value at x=0 differs from d_(n,q)")
    if direct.degree > n:
        problems.append(f"x-degree {direct.degree} > {n}")
    return not problems, "; ".join(problems)


def _emit(report: dict) -> None:
    sys.stdout.write(json.dumps(report, indent=2) + "\n")


def cmd_verify(args) -> int:
    if args.n_max < 0 or args.u_prec < 1:
        raise ConfigError("need n_max >= 0 and u_prec >= 1")
    start = time.perf_counter()
    cfg = qf.QFamilyConfig(n_max=args.n_max, u_prec=args.u_prec)
    suites = SUITES if args.suite == "all" else (args.suite,)
    cases = [c for s in suites for c in suite_cases(s, cfg)]
    report = {
        "suite": args.suite,
        "config": {"n_max": cfg.n_max, "u_prec": cfg.u_prec, "guard": cfg.guard},
        "cases": cases,
        "wall_ms": round((time.perf_counter() - start) * 1000),
    }
    _emit(report)
    return 0 if all(c["status"] == "pass" for c in cases) else 1


def cmd_padic(args) -> int:
    checks = PADIC_CHECKS if args.check == "all" else (args.check,)
    start = time.perf_counter()
    try:
        reports = padic_suite(args.p, args.c, args.t_val, args.n_max, args.digits, checks)
    except (QCDError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    cases = [r.to_json() for r in reports]
    _emit({
        "suite": f"padic.{args.check}",
        "config": {"p": args.p, "c": args.c, "q": 1 + args.c * args.p, "t": args.t_val,
                   "N_max": args.n_max, "digits": args.digits},
        "cases": cases,
        "wall_ms": round((time.perf_counter() - start) * 1000),
    })
    return 0 if all(c["status"] == "pass" for c in cases) else 1


# --- entry point -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcd", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="emit a family table")
    t.add_argument("--family", required=True, choices=FAMILIES)
    t.add_argument("--n-max", type=int, required=True)
    t.add_argument("--u-prec", type=int, default=8)
    t.add_argument("--format", choices=("csv", "json"), default="csv")
    t.add_argument("--out", default="-", help="output path ('-' for stdout)")
    t.add_argument("--lambda", dest="lam", default=None, help="rational lambda for daehee1/daehee2 (default 1)")
    t.set_defaults(func=cmd_table)

    v = sub.add_parser("verify", help="run exact identity suites")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--n-max", type=int, default=12)
    v.add_argument("--u-prec", type=int, default=8)
    v.set_defaults(func=cmd_verify)

    p = sub.add_parser("padic", help="p-adic q-integral cross-checks")
    p.add_argument("--p", type=int, default=5)
    p.add_argument("--c", type=int, default=1, help="q = 1 + c*p")
    p.add_argument("--t-val", type=int, default=5)
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--digits", type=int, default=12)
    p.add_argument("--check", choices=PADIC_CHECKS + ("all",), default="all")
    p.set_defaults(func=cmd_padic)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError, OSError) as exc:
        sys.stderr.write(f"qcd: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
