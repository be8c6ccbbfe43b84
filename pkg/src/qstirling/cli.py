"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 on usage or configuration errors (bad input, size cap exceeded).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from typing import List, Optional

from . import kernels
from .analysis import analyze
from .codes import count_code_pairs
from .combinatorics import (MultisetSpec, enumerate_words, format_word, is_quasi_stirling,
                            is_stirling, multinomial, parse_multiset, parse_word, size_cap,
                            special_counts)
from .errors import QStirlingError, SizeLimitError
from .polynomial import (TREES, WORDS, closed_form_coefficient, quasi_stirling_polynomial,
                         verify_main_identity)
from .trees import enumerate_trees
from .verify import check_codes, check_phi, spot_check, sweep

DES_NOTE = "des counts strict descents plus one, so every polynomial here is divisible by t"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_range(text: str) -> List[int]:
    """``"0..3"`` -> [0, 1, 2, 3]; ``"2"`` -> [2]."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad range {text!r}") from None
    if lo < 0 or hi < lo:
        raise UsageError(f"bad range {text!r}")
    return list(range(lo, hi + 1))


def _csv(rows: List[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v
                         for k, v in row.items()})
    return buf.getvalue().rstrip("\n")


def _emit(args, text: List[str], payload: dict, rows: List[dict]):
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=False))
    elif args.format == "csv":
        print(_csv(rows))
    else:
        print("\n".join(text))


def _flag(ok: bool) -> str:
    return "true" if ok else "false"


def _multiset(args) -> MultisetSpec:
    return parse_multiset(args.multiset)


# ---------------------------------------------------------------------------

def cmd_poly(args) -> int:
    M = _multiset(args)
    methods = [WORDS, TREES] if args.method == "both" else [args.method]
    polys = {m: quasi_stirling_polynomial(M, m, args.cap) for m in methods}
    agree = len(set(polys.values())) == 1
    text = [f"multiset {M} (n={M.n}, K={M.K})"]
    text += [f"{m}: {p.pretty()}" for m, p in polys.items()]
    if len(methods) > 1:
        text.append(f"agree={_flag(agree)}")
    text.append(f"note: {DES_NOTE}")
    payload = {"multiset": M.to_text(), "n": M.n, "K": M.K,
               "polynomials": {m: p.to_text() for m, p in polys.items()},
               "coefficients": {m: list(p.coeffs) for m, p in polys.items()},
               "agree": agree, "note": DES_NOTE}
    rows = [{"multiset": M.to_text(), "method": m, "polynomial": p.to_text(),
             "coefficients": list(p.coeffs)} for m, p in polys.items()]
    _emit(args, text, payload, rows)
    return EXIT_OK if agree else EXIT_FAIL


def cmd_verify_identity(args) -> int:
    M = _multiset(args)
    report = verify_main_identity(M, args.terms, args.cap)
    d = report.to_dict()
    text = [f"multiset {M} (n={M.n}, K={M.K})",
            f"Qbar(t) = {report.polynomial.pretty()}",
            f"methods agree: {_flag(report.methods_agree)}",
            f"{'m':>4} {'series':>20} {'closed form':>20}  ok"]
    text += [f"{r.m:>4} {r.series:>20} {r.closed_form:>20}  {_flag(r.ok)}" for r in report.rows]
    text.append(f"pass={_flag(report.passed)}")
    text.append(f"note: {DES_NOTE}")
    rows = [dict(multiset=M.to_text(), **row) for row in d["rows"]]
    _emit(args, text, d, rows)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_bijections(args) -> int:
    M = _multiset(args)
    text, payload, rows = [f"multiset {M} (n={M.n}, K={M.K})"], {"multiset": M.to_text()}, []
    ok = True
    spots = [spot_check(parse_word(s)) for s in args.spot]
    for s in spots:
        ok &= s.passed
        text.append(f"spot {s.tree} <-> {format_word(s.word)}: "
                    f"triple={s.triple} pass={_flag(s.passed)}")
    payload["spots"] = [s.to_dict() for s in spots]
    cap = size_cap() if args.cap is None else args.cap
    if M.K > cap:
        if not spots:
            raise SizeLimitError(M.K, cap)
        text.append(f"exhaustive checks skipped: K={M.K} exceeds the cap {cap}")
        payload["skipped"] = True
    else:
        phi_report = check_phi(M, cap)
        ok &= phi_report.passed
        payload["phi"] = phi_report.to_dict()
        rows.append({"check": "phi", "m": "", "count": phi_report.trees,
                     "expected": phi_report.words, "pass": phi_report.passed})
        text.append(f"phi: |T_M|={phi_report.trees} |Qbar_M|={phi_report.words} "
                    f"pass={_flag(phi_report.passed)}")
        text += [f"  {f}" for f in phi_report.failures[:10]]
        if not args.phi_only:
            payload["codes"] = []
            for m in parse_range(args.m):
                c = check_codes(M, m, cap)
                ok &= c.passed
                payload["codes"].append(c.to_dict())
                rows.append({"check": "psi/theta", "m": m, "count": c.block_trees,
                             "expected": c.closed_form, "pass": c.passed})
                text.append(f"m={m}: |BT|={c.block_trees} |T*|={c.half_edge_trees} "
                            f"|P|={c.code_pairs} closed form={c.closed_form} "
                            f"pass={_flag(c.passed)}")
                text += [f"  {f}" for f in c.failures[:10]]
    payload["pass"] = bool(ok)
    text.append(f"pass={_flag(ok)}")
    _emit(args, text, payload, rows)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_analyze(args) -> int:
    M = _multiset(args)
    report = analyze(M, args.cap)
    d = report.to_dict()
    d["pass"] = report.passed
    text = [f"multiset {M} (n={M.n}, K={M.K})",
            f"Qbar(t) = {report.roots.polynomial.pretty()}",
            f"all_real={_flag(report.roots.all_real)} "
            f"(distinct real roots {report.roots.distinct_real_roots} of squarefree degree "
            f"{report.roots.squarefree_degree}, t-valuation {report.roots.t_valuation})",
            f"all_nonpositive={_flag(report.roots.all_nonpositive)}",
            f"log_concave={_flag(report.log_concave)} unimodal={_flag(report.unimodal)}"
            + (" (internal zeros)" if report.internal_zeros else ""),
            f"M'={report.reduction.M_prime.to_text()} ({report.reduction.M_prime}) "
            f"equal={_flag(report.reduction.equal)}",
            f"pass={_flag(report.passed)}",
            f"note: {DES_NOTE}"]
    _emit(args, text, d, [d])
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_count(args) -> int:
    M = _multiset(args)
    cap = size_cap() if args.cap is None else args.cap
    payload = {"multiset": M.to_text(), "n": M.n, "K": M.K, "words": multinomial(M)}
    ok = True
    if M.K <= cap:
        quasi = [w for w in enumerate_words(M) if is_quasi_stirling(w)]
        n_trees = sum(1 for _ in enumerate_trees(M, cap))
        payload["quasi_stirling"] = len(quasi)
        payload["stirling"] = sum(1 for w in quasi if is_stirling(w))
        payload["trees"] = n_trees
        poly = quasi_stirling_polynomial(M, WORDS, cap)
        payload["top_des_count"] = poly.coeff(M.n)
        ok &= n_trees == len(quasi)
    sc = special_counts(M)
    payload["special_total"] = sc.total
    payload["special_top_des"] = sc.top_des
    if "quasi_stirling" in payload:
        if sc.total is not None:
            ok &= sc.total == payload["quasi_stirling"]
        if sc.top_des is not None:
            ok &= sc.top_des == payload["top_des_count"]
    payload["series"] = [{"m": m, "closed_form": closed_form_coefficient(M, m),
                          "code_pairs": count_code_pairs(M, m)} for m in parse_range(args.m)]
    payload["pass"] = bool(ok)
    text = [f"multiset {M} (n={M.n}, K={M.K})", f"permutations: {payload['words']}"]
    for key in ("quasi_stirling", "stirling", "trees", "top_des_count",
                "special_total", "special_top_des"):
        if key in payload:
            text.append(f"{key}: {'-' if payload[key] is None else payload[key]}")
    text += [f"m={r['m']}: |T*|=|BT|=|P|={r['code_pairs']}" for r in payload["series"]]
    text.append(f"pass={_flag(ok)}")
    rows = [{k: v for k, v in payload.items() if k != "series"}]
    _emit(args, text, payload, rows)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_sweep(args) -> int:
    cap = size_cap() if args.cap is None else args.cap
    if args.max_size < 1 or args.max_size > cap:
        raise SizeLimitError(args.max_size, cap)
    start = time.perf_counter()
    rows = sweep(args.max_size, args.terms, parse_range(args.m), cap, args.jobs)
    elapsed = time.perf_counter() - start
    failures = [r for r in rows if not r.passed]
    payload = {"max_size": args.max_size, "terms": args.terms, "multisets": len(rows),
               "failed": [r.to_dict() for r in failures], "pass": not failures}
    text = [f"{r.multiset.to_text():<20} identity={_flag(r.identity)} "
            f"analysis={_flag(r.analysis)} phi={_flag(r.phi)} codes={_flag(r.codes)}"
            for r in rows] if args.verbose else []
    text += [f"  {r.multiset.to_text()}: {'; '.join(r.notes)}" for r in failures]
    text.append(f"{len(rows)} multisets, {len(failures)} failed "
                f"(backend {kernels.BACKEND}, {elapsed:.1f}s)")
    text.append(f"pass={_flag(not failures)}")
    _emit(args, text, payload, [r.to_dict() for r in rows])
    return EXIT_OK if not failures else EXIT_FAIL


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qstirling",
        description="Quasi-Stirling polynomials, their tree bijections and identities.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--cap", type=int, default=None,
                        help="enumeration cap on K (default: $QSTIRLING_SIZE_CAP or 9)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", parents=[common], help="quasi-Stirling polynomial")
    p.add_argument("--multiset", required=True, help='multiplicities, e.g. "1,2,1"')
    p.add_argument("--method", choices=[WORDS, TREES, "both"], default=WORDS)
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("verify-identity", parents=[common],
                       help="series coefficients against the closed form")
    p.add_argument("--multiset", required=True)
    p.add_argument("--terms", type=int, default=10, help="largest m checked")
    p.set_defaults(func=cmd_verify_identity)

    p = sub.add_parser("bijections", parents=[common], help="round-trip the bijections")
    p.add_argument("--multiset", required=True)
    p.add_argument("--m", default="0..2", help='half-edge counts, e.g. "0..3"')
    p.add_argument("--phi-only", action="store_true")
    p.add_argument("--spot", action="append", default=[],
                   help="word to decode and re-encode (repeatable)")
    p.set_defaults(func=cmd_bijections)

    p = sub.add_parser("analyze", parents=[common], help="roots and coefficient shape")
    p.add_argument("--multiset", required=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("count", parents=[common], help="cardinalities and closed forms")
    p.add_argument("--multiset", required=True)
    p.add_argument("--m", default="0..5")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("sweep", parents=[common], help="every check on all small multisets")
    p.add_argument("--max-size", type=int, default=6)
    p.add_argument("--terms", type=int, default=10)
    p.add_argument("--m", default="0..2")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.cap is not None and args.cap < 1:
            raise UsageError("--cap must be positive")
        return args.func(args)
    except (UsageError, QStirlingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
