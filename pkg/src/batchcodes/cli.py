"""Command-line front end.

Exit codes: 0 yes/success, 1 proven no, 2 usage or parameter error,
3 inconclusive (search budget), 4 unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import bounds, kopt, verifier
from .constructions import CodeParams, construct
from .errors import (
    BatchCodeError,
    ConditionViolated,
    InvalidParams,
    MatrixFormatError,
    NoConstructionKnown,
    NotCovered,
    RankDeficient,
    SearchBudgetExceeded,
)
from .gf2core import format_matrix, min_distance, read_matrix

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_INCONCLUSIVE, EXIT_IO = 0, 1, 2, 3, 4
DASH = "—"
TABLE_COLUMNS = ["k", "r", "lower_t2", "lower_t3", "lower_t4", "upper_t2", "upper_t3", "upper_t4"]


def _budget() -> int:
    raw = os.environ.get("BATCH_SEARCH_BUDGET")
    if raw is None:
        return verifier.DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise InvalidParams(f"BATCH_SEARCH_BUDGET must be an integer, got {raw!r}") from None
    if value < 1:
        raise InvalidParams("BATCH_SEARCH_BUDGET must be positive")
    return value


class _Unreadable(Exception):
    pass


def _load(path):
    try:
        return read_matrix(path)
    except (OSError, MatrixFormatError, UnicodeDecodeError) as exc:
        raise _Unreadable(f"cannot read matrix from {path}: {exc}") from None


def _parse_range(text: str) -> range:
    for sep in ("..", "-", ":"):
        if sep in text:
            lo, hi = text.split(sep, 1)
            break
    else:
        lo = hi = text
    try:
        lo_i, hi_i = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; use A..B") from None
    if lo_i < 1 or hi_i < lo_i:
        raise argparse.ArgumentTypeError(f"empty or non-positive range {text!r}")
    return range(lo_i, hi_i + 1)


# -- subcommands ---------------------------------------------------------------


def cmd_construct(args) -> int:
    try:
        built = construct(CodeParams(args.k, args.r, args.t))
    except NoConstructionKnown as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    p = built.params
    text = format_matrix(built.matrix, built.header())
    print(f"family={built.family} n={built.n} k={p.k} r={p.r} t={p.t}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_YES


def cmd_verify(args) -> int:
    G = _load(args.matrix)
    budget = _budget()
    label = "BATCH" if args.mode == "batch" else "PIR"
    try:
        failure = verifier.find_failure(G, args.r, args.t, args.mode, budget)
        certs = None
        if failure is None and args.certs:
            certs = [c.to_dict() for _, c in verifier.certificates(G, args.r, args.t, args.mode, budget)]
    except SearchBudgetExceeded as exc:
        where = "" if exc.query is None else f" at query {[i + 1 for i in exc.query]}"
        print(f"{label}({args.r},{args.t})=inconclusive{where}")
        return EXIT_INCONCLUSIVE
    if failure is not None:
        print(f"{label}({args.r},{args.t})=no")
        print(f"unserved query: {[i + 1 for i in failure]}")
        return EXIT_NO
    print(f"{label}({args.r},{args.t})=yes")
    if certs is not None:
        with open(args.certs, "w", encoding="utf-8") as fh:
            json.dump(certs, fh, indent=1)
            fh.write("\n")
    return EXIT_YES


def cmd_dist(args) -> int:
    G = _load(args.matrix)
    try:
        d = min_distance(G)
    except RankDeficient as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"d={d}")
    return EXIT_YES


def cmd_bounds(args) -> int:
    k, r, t = args.k, args.r, args.t
    d = t if args.d is None else args.d
    reports = [bounds.lower_bound_nonsystematic(k, r, t, d)]
    if t >= 2:
        reports.append(bounds.lower_bound_systematic(k, r, t, d))
    reports.append(bounds.lower_bound_rpdv(k, r, t, d))
    upper = None
    if t in (2, 3, 4) and r >= 2:
        reports.append(
            bounds.BoundReport("table-lower", "lower-on-n", bounds.table_lower_bound(k, r, t), None, ("d=t",))
        )
        try:
            upper = bounds.table_upper_bound(k, r, t)
            reports.append(bounds.BoundReport("table-upper", "upper-on-n", upper, None, ("construction",)))
        except NotCovered:
            pass
    assumption = "d=t" if args.d is None else f"d={d}"
    print(f"k={k} r={r} t={t} {assumption} q={args.q}")
    for rep in reports:
        print(rep.line())
    if upper is not None:
        try:
            cm = bounds.cm_dimension_bound_recursive(upper, r, t, d, args.q)
            print(cm.line() + f" (at n={upper})")
        except ConditionViolated:
            pass
    lower = max(int(rep.value) for rep in reports if rep.kind == "lower-on-n")
    print(f"lower={lower} upper={DASH if upper is None else upper}")
    return EXIT_YES


def table_rows(k_range, r_range):
    for k in k_range:
        for r in r_range:
            row = [k, r]
            row += [bounds.table_lower_bound(k, r, t) for t in (2, 3, 4)]
            for t in (2, 3, 4):
                try:
                    row.append(bounds.table_upper_bound(k, r, t))
                except NotCovered:
                    row.append(DASH)
            yield row


def render_table(rows, fmt: str) -> str:
    rows = list(rows)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(TABLE_COLUMNS)
        writer.writerows(rows)
        return buf.getvalue()
    cells = [TABLE_COLUMNS] + [[str(c) for c in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(TABLE_COLUMNS))]
    return "".join("  ".join(c.rjust(w) for c, w in zip(row, widths)) + "\n" for row in cells)


def cmd_table(args) -> int:
    if min(args.r_range) < 2:
        print("error: r must be >= 2 for the tabulated bounds", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(render_table(table_rows(args.k_range, args.r_range), args.format))
    return EXIT_YES


def cmd_maxt(args) -> int:
    G = _load(args.matrix)
    result = verifier.max_t(G, args.r, args.mode, _budget())
    print(f"max_t={result.value} {'exact' if result.exact else 'budget-limited'}")
    return EXIT_YES if result.exact else EXIT_INCONCLUSIVE


def cmd_koptgen(args) -> int:
    if args.n_max > kopt.KOPT_MAX_N or args.n_max < 1:
        print(f"error: --n-max must be in 1..{kopt.KOPT_MAX_N}", file=sys.stderr)
        return EXIT_USAGE
    text = kopt.table_to_csv(kopt.generate_table(args.n_max, args.d_max))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_YES


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="batchcodes", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a generator matrix")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-r", type=int, required=True)
    p.add_argument("-t", type=int, required=True)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check the batch or PIR property of a matrix file")
    p.add_argument("matrix")
    p.add_argument("-r", type=int, required=True)
    p.add_argument("-t", type=int, required=True)
    p.add_argument("--mode", choices=("batch", "pir"), default="batch")
    p.add_argument("--certs", help="write recovery certificates (JSON, 1-based) here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dist", help="minimum distance of a matrix file")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("bounds", help="evaluate the length and dimension bounds")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-r", type=int, required=True)
    p.add_argument("-t", type=int, required=True)
    p.add_argument("-d", type=int, help="minimum distance (default: t)")
    p.add_argument("-q", type=int, default=2)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("table", help="tabulate lower and upper length bounds for t = 2, 3, 4")
    p.add_argument("--k-range", type=_parse_range, required=True, help="e.g. 4..12")
    p.add_argument("--r-range", type=_parse_range, required=True, help="e.g. 2..5")
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("maxt", help="largest t for which a matrix file is batch/PIR")
    p.add_argument("matrix")
    p.add_argument("-r", type=int, required=True)
    p.add_argument("--mode", choices=("batch", "pir"), default="batch")
    p.set_defaults(func=cmd_maxt)

    p = sub.add_parser("koptgen", help="regenerate the exact binary k_opt table")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--d-max", type=int)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_koptgen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Unreadable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except BatchCodeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
