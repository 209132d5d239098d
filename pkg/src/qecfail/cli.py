"""Command line entry point: ``qecfail {info,enums,curves,rank,verify,mc}``.

Exit status: 0 success, 1 usage error, 2 invalid input (bad code file,
unknown catalog name, out-of-range argument), 3 a verification check failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import metrics, oracle, verify
from .codes import CATALOG_NAMES, AdditiveCode, CapExceeded, CodeError, catalog, load_code, parameters, span_packed
from .enumerators import rains_enumerators, sl_enumerators

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _add_code_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--catalog", metavar="NAME", help=f"catalog code ({', '.join(CATALOG_NAMES)})")
    g.add_argument("--code", metavar="FILE", type=Path, help="code file")


def _resolve(args) -> AdditiveCode:
    if args.catalog:
        return catalog(args.catalog)
    return load_code(args.code)


def _resolve_name(item: str) -> AdditiveCode:
    """A catalog name, or a path to a code file."""
    if item in CATALOG_NAMES:
        return catalog(item)
    path = Path(item)
    if path.exists():
        return load_code(path)
    return catalog(item)  # raises with the list of known names


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


# -- commands --------------------------------------------------------------


def cmd_info(args) -> int:
    code = _resolve(args)
    p = parameters(code)
    size_c = len(span_packed(code.gens))
    size_dual = 1 << (code.n + code.k)
    lines = [
        f"{code.label} {p}",
        f"n = {p.n}  k = {p.k}  d = {p.d}  {'pure' if p.pure else 'impure'}",
        f"|C| = {size_c}  |C^perp| = {size_dual}",
        "generators:",
        *(f"  {g}" for g in code.gens),
    ]
    print("\n".join(lines))
    return EXIT_OK


ENUM_COLUMNS = ("m", "A_m", "B_m", "A'_m", "B'_m")


def enumerator_rows(code: AdditiveCode) -> list[tuple[int, int, int, Fraction, Fraction]]:
    a, b = sl_enumerators(code)
    r = rains_enumerators(code)
    return [(m, a[m], b[m], r.a_prime[m], r.b_prime[m]) for m in range(code.n + 1)]


def cmd_enums(args) -> int:
    code = _resolve(args)
    rows = enumerator_rows(code)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(ENUM_COLUMNS)
        for m, a, b, ap, bp in rows:
            w.writerow([m, a, b, _frac(ap), _frac(bp)])
        text = buf.getvalue()
    else:
        def rat(x: Fraction) -> dict:
            return {"numerator": x.numerator, "denominator": x.denominator}

        doc = {
            "code": code.label,
            "n": code.n,
            "k": code.k,
            "rows": [
                {"m": m, "A_m": a, "B_m": b, "A'_m": rat(ap), "B'_m": rat(bp)} for m, a, b, ap, bp in rows
            ],
        }
        text = json.dumps(doc, indent=2) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_curves(args) -> int:
    code = _resolve(args)
    if args.points < 1:
        raise ValueError("empty grid: --points must be at least 1")
    if not 0 <= args.pmin <= args.pmax <= 1:
        raise ValueError(f"need 0 <= pmin <= pmax <= 1, got {args.pmin}, {args.pmax}")
    curve = metrics.metric_curve(code, metrics.log_grid(args.pmin, args.pmax, args.points))
    _emit(curve.to_csv() if args.format == "csv" else curve.to_json() + "\n", args.out)
    return EXIT_OK


def cmd_rank(args) -> int:
    names = [s.strip() for s in args.codes.split(",") if s.strip()] if args.codes else list(verify.RANKED_NAMES)
    codes = [_resolve_name(n) for n in names]
    entries = metrics.rank_codes(codes, args.mode)
    if args.json:
        print(json.dumps([e.as_json() for e in entries]))
        return EXIT_OK
    dname = "d" if args.mode == "detection" else "d'"
    cname = "c" if args.mode == "detection" else "c'"
    table = [("code", dname, cname, "tied")]
    table += [(e.name, str(e.d), _frac(e.coef), "*" if e.tied else "") for e in entries]
    widths = [max(len(r[j]) for r in table) for j in range(4)]
    for r in table:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return EXIT_OK


def cmd_verify(args) -> int:
    codes = None
    if args.catalog or args.code:
        codes = [_resolve(args)]
    suite = verify.quick_suite(codes) if args.level == "quick" else verify.full_suite(args.seed, codes)
    failed = 0
    total = 0
    for check in suite:
        total += 1
        failed += not check.ok
        if args.verbose or not check.ok:
            print(check.line())
    print(f"{total - failed}/{total} checks passed ({args.level}, seed {args.seed})")
    return EXIT_VERIFY if failed else EXIT_OK


def _parse_arg(mode: str, text: str):
    if mode == "S":
        return [int(t) for t in text.split(",") if t.strip()]
    if mode == "m":
        return int(text)
    return float(Fraction(text))


def _recovery(code: AdditiveCode, choice: str, mode: str, arg) -> list[int]:
    if choice == "p0":
        return metrics.p0_classes(code)
    if choice == "best":
        if mode == "m":
            return metrics.best_classes_m(code, arg)
        if mode == "p":
            return metrics.best_classes_p(code, Fraction(arg))
        return metrics.p0_classes(code)
    return [int(t) for t in choice.split(",")]


def cmd_mc(args) -> int:
    code = _resolve(args)
    arg = _parse_arg(args.error_mode, args.arg)
    if args.kind == "detection":
        T, F = oracle.mc_detection(code, args.error_mode, arg, args.samples, args.seed)
        out = {"Td": json.loads(T.to_json()), "Td*Fd": json.loads(F.to_json())}
    else:
        recovery = _recovery(code, args.recovery, args.error_mode, arg)
        C = oracle.mc_correction(code, args.error_mode, arg, recovery, args.samples, args.seed)
        out = {"Fc": json.loads(C.to_json())}
    print(json.dumps(out))
    return EXIT_OK


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qecfail", description="Failure probabilities of qubit stabilizer codes.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("info", help="parameters and generators of a code")
    _add_code_args(p)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("enums", help="Shor-Laflamme and Rains weight enumerators")
    _add_code_args(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", type=Path, help="write to FILE instead of stdout")
    p.set_defaults(func=cmd_enums)

    p = sub.add_parser("curves", help="depolarizing-channel metrics on a log-spaced p grid")
    _add_code_args(p)
    p.add_argument("--pmin", type=float, default=1e-3)
    p.add_argument("--pmax", type=float, default=1.0)
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", type=Path, help="write to FILE instead of stdout")
    p.set_defaults(func=cmd_curves)

    p = sub.add_parser("rank", help="rank codes by small-p failure, worst first")
    p.add_argument("--mode", choices=("detection", "correction"), default="detection")
    p.add_argument("--codes", metavar="LIST", help="comma-separated catalog names or code files (default: catalog without G6b)")
    p.add_argument("--json", action="store_true", help="emit JSON instead of a table")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("verify", help="run identity, ranking, oracle and Monte Carlo checks")
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-v", "--verbose", action="store_true", help="print passing checks too")
    _add_code_args(p, required=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mc", help="Monte Carlo estimate from the dense simulation")
    _add_code_args(p)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--kind", choices=("detection", "correction"), default="detection")
    p.add_argument("--error-mode", choices=("S", "m", "p"), default="m")
    p.add_argument("--arg", default="1", help="subset 'i,j,...' (0-based), weight m, or probability p")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument(
        "--recovery",
        default="p0",
        help="'p0' (p -> 0 optimal), 'best' (optimal for this m or p), or one class index per syndrome 'c0,c1,...'",
    )
    p.set_defaults(func=cmd_mc)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (CodeError, CapExceeded, ValueError, IndexError, OSError) as exc:
        print(f"qecfail: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except KeyError as exc:
        print(f"qecfail: error: {exc.args[0]}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
