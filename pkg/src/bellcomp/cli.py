"""Command-line front end: ``bell``, ``comps``, ``verify`` and ``bench``.

Exit codes: 0 on success, 1 when a verification check fails, 2 on usage or
precondition errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import List, Optional, Sequence

from . import bell as B
from . import compositions as C
from .bench import (
    BENCH_STRATEGIES,
    DEFAULT_STRATEGIES,
    iter_bench,
    records_to_csv,
    records_to_json,
    records_to_text,
)
from .ring import DivisibilityError, MultiPoly, format_rational, parse_rational, render, to_json_value
from .verify import SUITES, run_verify

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

WEIGHT_STRATEGIES = {
    "enumerate": C.weight_by_enumeration,
    "partitions": C.weight_by_partitions,
    "convolution": C.weight_by_convolution,
    "depril": C.weight_by_depril,
    "weighted-conv": C.weight_by_weighted_conv,
}
COMPOSITION_STRATEGIES = tuple(WEIGHT_STRATEGIES) + ("part-removal",)


class UsageError(Exception):
    pass


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def _csv_list(text: str) -> List[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def parse_weight(text: str):
    """Parse one ``s=p/q`` weight assignment."""
    try:
        s, value = text.split("=", 1)
        return int(s), parse_rational(value)
    except ValueError:
        raise UsageError(f"bad weight {text!r}; expected s=p/q") from None


def _emit(text: str, out) -> None:
    out.write(text if text.endswith("\n") else text + "\n")


# -- bell --------------------------------------------------------------------


def cmd_bell(args, out) -> int:
    if args.strategy == "id1" and not args.n > args.k >= 1:
        raise UsageError(f"id1 needs n > k >= 1, got n={args.n}, k={args.k}")
    value = B.bell_by_strategy(args.n, args.k, args.strategy)
    if args.eval is not None:
        try:
            values = [parse_rational(v) for v in _csv_list(args.eval)]
        except ValueError:
            raise UsageError(f"bad --eval list {args.eval!r}") from None
        number = B.bell_eval(value, {i + 1: v for i, v in enumerate(values)})
        if args.format == "json":
            _emit(json.dumps(format_rational(number)), out)
        elif args.format == "csv":
            _emit(f"value\n{format_rational(number)}", out)
        else:
            _emit(format_rational(number), out)
        return EXIT_OK
    if args.format == "json":
        _emit(json.dumps(value.to_json()), out)
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("coeff", "monomial"))
        for m, c in value.sorted_terms():
            mono = str(MultiPoly({m: 1})) if m else "1"
            writer.writerow((format_rational(c), mono))
        _emit(buf.getvalue(), out)
    else:
        _emit(str(value), out)
    return EXIT_OK


# -- comps -------------------------------------------------------------------


def cmd_comps(args, out) -> int:
    f = C.WeightFunction(dict(parse_weight(w) for w in args.weight or ()))
    if args.list:
        for comp in C.enumerate_compositions(args.n, args.k, f.max_part):
            if all(p in f for p in comp):
                _emit("(" + ",".join(map(str, comp)) + ")", out)
        return EXIT_OK
    if args.table:
        table = C.convolution_table(f, args.k, args.n)
        if args.format == "json":
            _emit(json.dumps([[to_json_value(v) for v in row] for row in table]), out)
        else:
            sep = "," if args.format == "csv" else "\t"
            _emit(sep.join(["k\\n"] + [str(m) for m in range(args.n + 1)]), out)
            for j, row in enumerate(table):
                _emit(sep.join([str(j)] + [render(v) for v in row]), out)
        return EXIT_OK
    if args.strategy == "part-removal":
        value = C.weight_by_part_removal(f, args.remove_part, args.k, args.n)
    else:
        value = WEIGHT_STRATEGIES[args.strategy](f, args.k, args.n)
    if args.format == "json":
        _emit(json.dumps(to_json_value(value)), out)
    elif args.format == "csv":
        _emit(f"n,k,strategy,value\n{args.n},{args.k},{args.strategy},{render(value)}", out)
    else:
        _emit(render(value), out)
    return EXIT_OK


# -- verify ------------------------------------------------------------------


def cmd_verify(args, out) -> int:
    suites = SUITES if args.suites in (None, "all") else tuple(_csv_list(args.suites))
    unknown = [s for s in suites if s not in SUITES]
    if unknown:
        raise UsageError(f"unknown suites: {', '.join(unknown)}; choose from {', '.join(SUITES)} or 'all'")
    report = run_verify(args.n_max, args.k_max, suites, jobs=args.jobs)
    if args.format == "json":
        _emit(json.dumps(report.to_json(), indent=2), out)
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("suite", "name", "n", "k", "status", "detail"))
        for c in report.checks:
            writer.writerow((c.suite, c.name, c.n, c.k, "pass" if c.passed else "FAIL", c.detail))
        _emit(buf.getvalue(), out)
    else:
        lines = []
        for c in report.checks:
            if args.verbose or not c.passed:
                status = "pass" if c.passed else "FAIL"
                extra = f"  {c.detail}" if c.detail else ""
                lines.append(f"{status}  {c.suite:<10} {c.name:<28} n={c.n:<3} k={c.k:<3}{extra}")
        passed = len(report.checks) - len(report.failures)
        lines.append(
            f"{passed} passed, {len(report.failures)} failed "
            f"(n <= {report.n_max}, k <= {report.k_max}, {report.elapsed_ms:.0f} ms)"
        )
        if report.exponent_probe:
            p = report.exponent_probe
            lines.append(
                "normalization exponent: k -> {}/{} mismatches, n -> {}/{} mismatches".format(
                    p["k"]["mismatches"], p["k"]["cases"], p["n"]["mismatches"], p["n"]["cases"]
                )
            )
        _emit("\n".join(lines), out)
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


# -- bench -------------------------------------------------------------------


def cmd_bench(args, out) -> int:
    strategies = _csv_list(args.strategies) if args.strategies else list(DEFAULT_STRATEGIES)
    unknown = [s for s in strategies if s not in BENCH_STRATEGIES]
    if unknown:
        raise UsageError(f"unknown strategies: {', '.join(unknown)}; choose from {', '.join(BENCH_STRATEGIES)}")
    records = list(iter_bench(args.n_max, strategies, args.repetitions))
    if args.format == "json":
        _emit(json.dumps(records_to_json(records)), out)
    elif args.format == "text":
        _emit(records_to_text(records), out)
    else:
        _emit(records_to_csv(records), out)
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellcomp",
        description="Partial Bell polynomials and weighted integer compositions in exact arithmetic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def formats(p, default="text"):
        p.add_argument("--format", choices=("text", "json", "csv"), default=default)

    p = sub.add_parser("bell", help="compute B_{n,k}")
    p.add_argument("n", type=_nonneg_int)
    p.add_argument("k", type=_nonneg_int)
    p.add_argument("--strategy", choices=tuple(B.STRATEGIES), default="direct")
    p.add_argument("--eval", metavar="V1,V2,...", help="substitute x1=V1, x2=V2, ... and print the number")
    formats(p)
    p.set_defaults(func=cmd_bell)

    p = sub.add_parser("comps", help="total weight of k-part compositions of n")
    p.add_argument("n", type=_nonneg_int)
    p.add_argument("k", type=_nonneg_int)
    p.add_argument("-w", "--weight", action="append", metavar="S=P/Q", help="weight of part size S (repeatable)")
    p.add_argument("--strategy", choices=COMPOSITION_STRATEGIES, default="convolution")
    p.add_argument("--remove-part", type=_nonneg_int, default=0, metavar="R", help="part size stripped by part-removal")
    p.add_argument("--list", action="store_true", help="list the compositions with nonzero weight")
    p.add_argument("--table", action="store_true", help="print the full W(j, m) table")
    formats(p)
    p.set_defaults(func=cmd_comps)

    p = sub.add_parser("verify", help="check every identity against its reference")
    p.add_argument("--n-max", type=_nonneg_int, default=8)
    p.add_argument("--k-max", type=_nonneg_int, default=None)
    p.add_argument("--suites", default="all", help=f"comma list from {', '.join(SUITES)}, or 'all'")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("-v", "--verbose", action="store_true", help="list passing checks too")
    formats(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time strategies per (n, k); CSV by default")
    p.add_argument("--n-max", type=_nonneg_int, default=12)
    p.add_argument("--strategies", help=f"comma list from {', '.join(BENCH_STRATEGIES)}")
    p.add_argument("--repetitions", type=int, default=3)
    formats(p, default="csv")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (UsageError, C.PreconditionError, DivisibilityError, KeyError, ValueError, ZeroDivisionError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"bellcomp {args.command}: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
