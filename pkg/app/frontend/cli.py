"""
Command-line front end.

Results go to stdout, diagnostics to stderr. Exit codes: 0 success,
1 failed verification or internal inconsistency, 2 usage error.
"""

import argparse
import logging
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from contextlib import nullcontext
from typing import Optional, Sequence

from app.core.errors import ChebyGFError, UsageError
from app.core.genfun import GMS_METHODS, compute_Fs, h_family, hms_poly, series_expand_ratfun
from app.core.setup import initialize_app
from app.database.db_manager import cached_compute_Fs
from app.utils import formatting
from app.verify.suite import SELECTORS, Ranges, run_checks

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


def _max_s() -> int:
    return int(os.getenv("CHEBYGF_MAX_S", "8"))


def _check_s(s: int, cap: int) -> None:
    if not 1 <= s <= cap:
        raise UsageError(f"s must lie in 1..{cap}, got {s}")


def cmd_fs(args, executor) -> int:
    _check_s(args.s, args.max_s)
    F = cached_compute_Fs(args.s, executor)
    if args.format == "json":
        print(formatting.dumps(formatting.ratfun_to_json(args.s, F)))
    else:
        print(formatting.render_ratfun(args.s, F))
    return EXIT_OK


def cmd_hpoly(args, executor) -> int:
    if args.s < 1 or args.m < 0:
        raise UsageError("hpoly needs s >= 1 and m >= 0")
    H = hms_poly(args.s, args.m, method=args.method)
    if args.format == "json":
        print(formatting.dumps({"s": args.s, "m": args.m, "coeffs": [str(c) for c in H.coeffs]}))
    else:
        print(formatting.render_poly(H))
    return EXIT_OK


def cmd_expand(args, executor) -> int:
    _check_s(args.s, args.max_s)
    if args.terms < 1:
        raise UsageError("terms must be positive")
    F = cached_compute_Fs(args.s, executor)
    expanded = series_expand_ratfun(F, args.terms)
    direct = h_family(args.s, args.terms - 1, executor=executor).polys
    for m, (a, b) in enumerate(zip(expanded, direct)):
        if a != b:
            logger.error(f"expansion and resultant disagree at m={m}: {a} vs {b}")
            return EXIT_FAILED
    for m, a in enumerate(expanded):
        print(f"H_{m} = {formatting.render_poly(a)}")
    return EXIT_OK


def cmd_verify(args, executor) -> int:
    names = list(SELECTORS) if args.all or not args.checks else args.checks
    ranges = Ranges(s_max=args.s_max, m_max=args.m_max, disc_max=args.disc_max)
    compute = cached_compute_Fs if args.cache else compute_Fs
    reports = run_checks(names, ranges, executor, compute)
    if args.format == "json":
        print(formatting.dumps(formatting.reports_to_json(reports)))
    else:
        print(formatting.render_reports(reports))
    failed = [r.name for r in reports if not r.passed]
    if failed:
        logger.error(f"failed checks: {', '.join(failed)}")
        return EXIT_FAILED
    logger.info(f"{len(reports)} checks passed")
    return EXIT_OK


def cmd_bench(args, executor) -> int:
    _check_s(args.s_max, args.max_s)
    rows = []
    for s in range(1, args.s_max + 1):
        start = time.perf_counter()
        F = compute_Fs(s, executor)
        rows.append({
            "s": s,
            "seconds": time.perf_counter() - start,
            "deg_t_D": F.denominator.degree,
            "deg_x_D": F.denominator.degree_in("x"),
            "deg_t_N": F.numerator.degree,
            "deg_x_N": F.numerator.degree_in("x"),
        })
        logger.info(f"bench s={s}: {rows[-1]['seconds']:.3f}s")
    frame = formatting.timings_frame(rows)
    if args.output:
        frame.to_csv(args.output, index=False)
        logger.info(f"timings written to {args.output}")
    print(formatting.timings_csv(frame) if args.format == "csv" else formatting.timings_table(frame), end="")
    if args.format != "csv":
        print()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chebygf",
        description="Generating functions of the polynomials H_m^(s)(x) and checks of their properties.",
    )
    parser.add_argument("--log-level", default=None, help="overrides CHEBYGF_LOG_LEVEL")
    parser.add_argument("--threads", type=int, default=1, help="worker threads for independent resultants")
    parser.add_argument("--cache", action=argparse.BooleanOptionalAction, default=None,
                        help="use the SQLite result cache (on by default when CHEBYGF_CACHE_PATH is set)")
    parser.add_argument("--cache-path", default=None, help="overrides CHEBYGF_CACHE_PATH")
    parser.add_argument("--max-s", type=int, default=_max_s(), help="largest s accepted by fs, expand and bench")
    sub = parser.add_subparsers(dest="command", required=True)

    fs = sub.add_parser("fs", help="print F_s(x, t) = N_s / D_s")
    fs.add_argument("--s", type=int, required=True)
    fs.add_argument("--format", choices=["pretty", "json"], default="pretty")
    fs.set_defaults(handler=cmd_fs)

    hpoly = sub.add_parser("hpoly", help="print H_m^(s)(x)")
    hpoly.add_argument("--s", type=int, required=True)
    hpoly.add_argument("--m", type=int, required=True)
    hpoly.add_argument("--method", choices=GMS_METHODS, default="norm")
    hpoly.add_argument("--format", choices=["pretty", "json"], default="pretty")
    hpoly.set_defaults(handler=cmd_hpoly)

    expand = sub.add_parser("expand", help="print the first coefficients of F_s")
    expand.add_argument("--s", type=int, required=True)
    expand.add_argument("--terms", type=int, default=8)
    expand.set_defaults(handler=cmd_expand)

    verify = sub.add_parser("verify", help="run verification checks")
    verify.add_argument("checks", nargs="*", metavar="CHECK", help=f"any of: {', '.join(SELECTORS)}")
    verify.add_argument("--all", action="store_true", help="run every check over the default ranges")
    verify.add_argument("--s-max", type=int, default=Ranges.s_max)
    verify.add_argument("--m-max", type=int, default=Ranges.m_max)
    verify.add_argument("--disc-max", type=int, default=Ranges.disc_max)
    verify.add_argument("--format", choices=["text", "json"], default="text")
    verify.set_defaults(handler=cmd_verify)

    bench = sub.add_parser("bench", help="time compute_Fs for s = 1..s_max")
    bench.add_argument("--s-max", type=int, default=5)
    bench.add_argument("--format", choices=["table", "csv"], default="table")
    bench.add_argument("--output", default=None, help="also write the CSV to this file")
    bench.set_defaults(handler=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    cache_path = args.cache_path if args.cache_path is not None else os.getenv("CHEBYGF_CACHE_PATH", "")
    if args.cache is False or args.command == "bench":
        cache_path = ""
    args.cache = initialize_app(args.log_level, cache_path)

    if args.threads < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return EXIT_USAGE
    pool = ThreadPoolExecutor(max_workers=args.threads) if args.threads > 1 else nullcontext()
    try:
        with pool as executor:
            return args.handler(args, executor)
    except UsageError as e:
        logger.error(str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ChebyGFError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED
