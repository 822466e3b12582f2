"""Command line: query, bind, check, generate and bench."""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import bench, csvio, datagen
from .algebra import evaluate
from .errors import OngoingError
from .oracle import breakpoints, differential_check
from .query import parse
from .relation import bind_relation
from .ticks import parse_tick

DATA_ENV = "ONGOINGDB_DATA"


def _query_text(args) -> str:
    if args.expr is not None:
        return args.expr
    if args.query_file is None:
        raise OngoingError("give a query file or -e QUERY")
    return Path(args.query_file).read_text(encoding="utf-8")


def _data_dir(args) -> str:
    data = args.data or os.environ.get(DATA_ENV)
    if not data:
        raise OngoingError(f"no data directory: pass --data or set {DATA_ENV}")
    return data


def _rt(text: str) -> int:
    try:
        return parse_tick(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"bad reference time {text!r}: {exc}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_query(args) -> int:
    catalog = csvio.load_catalog(_data_dir(args))
    result = evaluate(parse(_query_text(args)), catalog)
    _emit(csvio.write_relation(result, calendar=args.calendar), args.out)
    return 0


def cmd_bind(args) -> int:
    rel = csvio.read_relation(args.result_csv)
    _emit(csvio.write_fixed(bind_relation(rel, args.rt), calendar=args.calendar), args.out)
    return 0


def cmd_check(args) -> int:
    catalog = csvio.load_catalog(_data_dir(args))
    report = differential_check(parse(_query_text(args)), catalog)
    print(report)
    return 0 if report.ok else 1


def cmd_generate(args) -> int:
    spec = datagen.GenSpec(rows=args.rows, pct_ongoing=args.pct_ongoing, shape=args.shape,
                           span_ticks=args.span, seed=args.seed, n_segments=args.segments,
                           segment=args.segment)
    rel = datagen.generate(spec)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / f"{args.name}.csv", "w", newline="", encoding="utf-8") as fh:
        csvio.write_relation(rel, fh)
    return 0


def cmd_bench(args) -> int:
    catalog = csvio.load_catalog(_data_dir(args))
    plan = parse(_query_text(args))
    rts = list(args.rt or [])
    if args.sweep:
        points = breakpoints(list(catalog.values()))
        lo, hi = points[0], points[-1]
        step = max(1, (hi - lo) // max(1, args.sweep - 1))
        rts.extend(sorted({min(hi, lo + k * step) for k in range(args.sweep)}))
    if not rts:
        rts = [breakpoints(list(catalog.values()))[-1]]
    rows = bench.run_bench(plan, catalog, rts, modes=args.modes.split(","),
                           repetitions=args.repetitions)
    _emit(bench.format_report(rows), args.out)
    return 0


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ongoingdb", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def query_args(p):
        p.add_argument("query_file", nargs="?", help="file holding one query")
        p.add_argument("-e", dest="expr", help="inline query text")
        p.add_argument("--data", help=f"data directory of CSV relations (default ${DATA_ENV})")

    def out_args(p):
        p.add_argument("--out", help="output file (default stdout)")
        p.add_argument("--format", choices=["csv"], default="csv")
        p.add_argument("--calendar", choices=["date", "timestamp"],
                       help="render ticks as ISO dates or timestamps")

    p = sub.add_parser("query", help="evaluate a query to an ongoing result")
    query_args(p)
    out_args(p)
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("bind", help="instantiate a stored ongoing result at a reference time")
    p.add_argument("result_csv")
    p.add_argument("--rt", type=_rt, required=True)
    out_args(p)
    p.set_defaults(func=cmd_bind)

    p = sub.add_parser("check", help="differential check against bind-then-evaluate")
    query_args(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("generate", help="write a synthetic relation")
    p.add_argument("--rows", type=int, default=10_000)
    p.add_argument("--pct-ongoing", type=float, default=15.0)
    p.add_argument("--shape", choices=["expanding", "shrinking"], default="expanding")
    p.add_argument("--span", type=int, default=3653, help="history length in ticks")
    p.add_argument("--segments", type=_positive, default=5)
    p.add_argument("--segment", type=int, help="place all ongoing anchors in this segment")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--name", default="D", help="relation name (file stem)")
    p.add_argument("--out", required=True, help="output data directory")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", help="time ongoing evaluation against re-evaluation")
    query_args(p)
    p.add_argument("--modes", default="ongoing,bind")
    p.add_argument("--repetitions", type=_positive, default=5)
    p.add_argument("--rt", type=_rt, action="append", help="bind reference time (repeatable)")
    p.add_argument("--sweep", type=int, default=0, help="also bind at N evenly spaced times")
    p.add_argument("--seed", type=int, default=0, help="unused; accepted for symmetry")
    out_args(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OngoingError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
