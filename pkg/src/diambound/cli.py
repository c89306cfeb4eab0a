"""Command-line interface.

Exit codes: 0 success, 1 mathematical failure (the bound does not verify,
a replay is rejected, no violation found), 2 operational error (bad flags,
undecidable comparison, memory budget exceeded).
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

from .bounds import make_params
from .errors import BudgetExceeded, DiamBoundError, Exhausted, NotFound, Undecidable

log = logging.getLogger("diambound")

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def _int_or_auto(text: str):
    if text == "auto":
        return "auto"
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'auto', got {text!r}") from None


def _params(args):
    return make_params(args.alpha, args.beta)


def _emit(lines, out=None):
    text = "\n".join(lines)
    print(text, file=out or sys.stdout)


def _write(path, text: str):
    if path:
        Path(path).write_text(text, encoding="utf-8")


# -- certify ---------------------------------------------------------------------

def cmd_certify(args) -> int:
    from .certificate import Certificate
    from .checker import AutoResult, CheckerConfig, run_checker
    from .replica import ReplicaAuto

    cfg = CheckerConfig(
        params=_params(args), l=args.l, d_ab=args.dab, mode=args.mode,
        max_precision_bits=args.max_precision, memory_budget=args.budget,
        b2_max_dim=args.b2_dmax, l_start=args.l_start, l_max=args.l_max,
    )
    if cfg.mode == "float-replica":
        print("note: float-replica mode is binary64 and does not certify anything", file=sys.stderr)
    try:
        result = run_checker(cfg)
    except Exhausted as exc:
        for a in exc.attempts:
            _emit([f"[l={a.l}] " + _last_error(a)])
        print(f"\n{exc}")
        return EXIT_FAIL

    if isinstance(result, (AutoResult, ReplicaAuto)):
        for a in result.attempts:
            _emit([f"[l={a.l}] " + _last_error(a)])
        final = result.certificate if isinstance(result, AutoResult) else result.run
        print(f"\nl = {result.l}\n")
    else:
        final = result
    _emit(final.transcript_lines())

    if cfg.mode == "float-replica":
        _write(args.out, json.dumps({
            "type": "float-replica", "params": {"alpha": cfg.params.alpha, "beta": cfg.params.beta},
            "l": final.l, "d_ab": final.d_ab, "success": final.success,
            "pair": list(final.pair) if final.pair else None, "transcript": final.lines,
        }, sort_keys=True) + "\n")
    else:
        _write(args.out, final.dumps())
    return EXIT_OK if isinstance(final, Certificate) or final.success else EXIT_FAIL


def _last_error(report) -> str:
    lines = [s for s in report.transcript_lines() if s.startswith("Error")]
    return lines[-1] if lines else "failed"


# -- replay ----------------------------------------------------------------------

def cmd_replay(args) -> int:
    from .certificate import Certificate, loads, replay_certificate

    cert = loads(Path(args.path).read_text(encoding="utf-8"))
    if not isinstance(cert, Certificate):
        print("file holds a failure report; nothing to replay")
        return EXIT_FAIL
    res = replay_certificate(cert, recompute_table=args.recompute_table, max_precision=args.max_precision)
    for p in res.problems:
        print(p)
    print(f"{'OK' if res.ok else 'REJECTED'}: {res.comparisons} comparisons replayed for f{cert.params}, l={cert.l}")
    return EXIT_OK if res.ok else EXIT_FAIL


# -- figure ----------------------------------------------------------------------

def cmd_figure(args) -> int:
    from .bounds import larman_value
    from .compare import bound_enclosure
    from .table import DiameterTable

    p = _params(args)
    if args.d < 3 or args.n_max < args.d:
        raise ValueError("need d >= 3 and n-max >= d")
    row = DiameterTable().ensure(args.d, args.n_max - args.d + 1)
    out = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n", "f", "tilde_delta", "larman"])
        for n in range(args.d, args.n_max + 1):
            f = bound_enclosure(p, args.d, n).midpoint_decimal(args.places)
            w.writerow([n, f, row[n - args.d], larman_value(args.d, n).value])
    finally:
        if args.out:
            out.close()
    return EXIT_OK


# -- table / nl / dab / falsify ----------------------------------------------------

def cmd_table(args) -> int:
    from .table import DiameterTable, dump_csv

    t = DiameterTable(memory_budget=args.budget)
    if args.csv:
        n_max = args.n_max if args.n_max is not None else args.n
        if n_max is None:
            raise ValueError("--csv needs --n or --n-max")
        d_hi = args.d_max if args.d_max is not None else args.d
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            dump_csv(t, range(args.d, d_hi + 1), n_max, fh)
        return EXIT_OK
    if args.n is None:
        raise ValueError("--n is required unless --csv is given")
    print(t.tilde_delta(args.d, args.n))
    return EXIT_OK


def cmd_nl(args) -> int:
    from .checker import find_n_L

    p = _params(args)
    n_start = args.n_start if args.n_start is not None else args.d
    rec, _ = find_n_L(p, args.d, n_start, args.max_precision)
    print(f"n_L({rec.d}) = {rec.n_L}")
    print(f"crossing_margin_ok = {str(rec.crossing_margin_ok).lower()}")
    return EXIT_OK


def cmd_dab(args) -> int:
    from .threshold import certify_dab, substituted_polynomial

    p = _params(args)
    res = certify_dab(p)
    cert = res.certificate
    if args.json:
        print(json.dumps({"d_ab": res.d_ab, **cert.to_dict()}, sort_keys=True))
        return EXIT_OK
    print(res.d_ab)
    print(f"D0 = beta + d/alpha = {res.D0}")
    print(f"N(D) = {cert.polynomial}")
    print(f"in d: {substituted_polynomial(p)}")
    print(f"N(D0) = {cert.value_at_D0}")
    print(f"sign changes: {cert.sign_changes_at_D0} at D0, {cert.sign_changes_at_infinity} at +oo "
          f"-> {cert.roots_above} roots above D0")
    print(f"Sturm chain length {len(cert.chain)}, certificate {'valid' if cert.verify() else 'INVALID'}")
    return EXIT_OK


def cmd_falsify(args) -> int:
    from .falsifier import BivariatePolynomial, evaluate_inductive_gap, find_violation

    poly = BivariatePolynomial.parse(args.poly)
    try:
        d, n = find_violation(poly, args.d_min, args.n_min, args.budget)
    except NotFound as exc:
        print(exc)
        return EXIT_FAIL
    print(f"({d},{n})")
    print(f"gap = {evaluate_inductive_gap(poly, d, n)}")
    return EXIT_OK


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    from .checker import DEFAULT_MEMORY_BUDGET
    from .compare import DEFAULT_MAX_PRECISION

    ap = argparse.ArgumentParser(prog="diambound", description="Certified base-case checks for polyhedral diameter bounds "
                                 "f(d, n) = (n-d)^log2(beta + d/alpha).")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def ab(sp):
        sp.add_argument("--alpha", type=int, required=True)
        sp.add_argument("--beta", type=int, required=True)

    sp = sub.add_parser("certify", help="run the base-case checker")
    ab(sp)
    sp.add_argument("--l", type=_int_or_auto, default="auto", help="starting dimension l >= 3, or auto")
    sp.add_argument("--dab", type=_int_or_auto, default="auto", help="inductive threshold d(alpha,beta), or auto")
    sp.add_argument("--mode", choices=["rigorous", "float-replica"], default="rigorous")
    sp.add_argument("--max-precision", type=int, default=DEFAULT_MAX_PRECISION, metavar="BITS")
    sp.add_argument("--out", help="write the certificate or failure report here")
    sp.add_argument("--budget", type=int, default=DEFAULT_MEMORY_BUDGET, metavar="BYTES")
    sp.add_argument("--b2-dmax", type=int, default=None, metavar="D",
                    help="stop step B2 after dimension D (partial run, bound not certified)")
    sp.add_argument("--l-start", type=int, default=3)
    sp.add_argument("--l-max", type=int, default=256)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("replay", help="re-verify a certificate file")
    sp.add_argument("path")
    sp.add_argument("--recompute-table", action="store_true",
                    help="also rebuild the table and check every entry against its witness block")
    sp.add_argument("--max-precision", type=int, default=DEFAULT_MAX_PRECISION, metavar="BITS")
    sp.set_defaults(func=cmd_replay)

    sp = sub.add_parser("figure", help="CSV of f, tilde and the Larman bound for one d")
    ab(sp)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--places", type=int, default=6, help="decimals for the f midpoint")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_figure)

    sp = sub.add_parser("table", help="exact tilde(d, n), or a CSV dump of rows")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--n", type=int)
    sp.add_argument("--csv", help="write rows d..d-max for n <= n-max to this CSV file")
    sp.add_argument("--d-max", type=int)
    sp.add_argument("--n-max", type=int)
    sp.add_argument("--budget", type=int, default=DEFAULT_MEMORY_BUDGET, metavar="BYTES")
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("nl", help="first n with the Larman bound at or below f")
    ab(sp)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--n-start", type=int)
    sp.add_argument("--max-precision", type=int, default=DEFAULT_MAX_PRECISION, metavar="BITS")
    sp.set_defaults(func=cmd_nl)

    sp = sub.add_parser("dab", help="certified inductive threshold d(alpha, beta)")
    ab(sp)
    sp.add_argument("--json", action="store_true", help="print the full Sturm certificate")
    sp.set_defaults(func=cmd_dab)

    sp = sub.add_parser("falsify", help="find where a polynomial bound breaks the inductive step",
                        description='POLY is a list of i:j:c terms meaning c * d^i * n^j, e.g. "0:1:1 1:0:-1" '
                                    "for n - d; c is an integer or num/den.")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--d-min", type=int, default=1)
    sp.add_argument("--n-min", type=int, default=2)
    sp.add_argument("--budget", type=int, default=10_000, help="maximum number of probes")
    sp.set_defaults(func=cmd_falsify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (Undecidable, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (DiamBoundError, ValueError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
