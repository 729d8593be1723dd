"""Command-line front end for the enumeration engines.

Four subcommands cover the package surface:

* ``series``  - counts from the layered functional-equation iteration,
  by perimeter alone or refined by diagonals or nose class;
* ``census``  - the same numbers from the exhaustive generator, with an
  optional full four-statistic breakdown and worker processes;
* ``ratios``  - the column-convex to diagonally-convex comparison table;
* ``verify``  - the named identity suites, one PASS/FAIL line per check.

Every output is deterministic for a given set of flags: tables are
sorted, worker counts change the runtime but never a byte of output,
and files are written to a temporary name and renamed into place so a
failure never leaves a partial file behind.  Exit codes: 0 on success,
1 when a verification check fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from fractions import Fraction

from . import brute, closedform, layered, verify
from .counts import nose_label

FORMATS = ("table", "csv", "json", "bfile")

SERIES_FIELDS = {
    "perimeter": ("perimeter",),
    "diagonals": ("perimeter", "diagonals"),
    "noses": ("perimeter", "nose"),
}


def _even_perimeter(minimum):
    def parse(text):
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError("%r is not an integer" % (text,))
        if value < minimum or value % 2:
            raise argparse.ArgumentTypeError(
                "perimeter bound must be an even integer of at least %d" % minimum
            )
        return value

    return parse


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("%r is not an integer" % (text,))
    if value < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return value


def _d_samples(text):
    try:
        values = tuple(
            Fraction(token.strip()) for token in text.split(",") if token.strip()
        )
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(
            "samples must be comma-separated rationals such as 1,1/2,2,3"
        )
    if not values:
        raise argparse.ArgumentTypeError("at least one sample is required")
    return values


def _default_threads():
    raw = os.environ.get("DCPOLY_THREADS")
    if raw is None:
        return None
    try:
        value = int(raw)
    except ValueError:
        return None
    return value if value >= 1 else None


def write_text(text, path):
    """Print to stdout, or write the file atomically via a rename."""
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    handle, tmp = tempfile.mkstemp(dir=directory, prefix=".dcpoly.")
    try:
        with os.fdopen(handle, "w") as stream:
            stream.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def emit_bfile(counts):
    """Render an integer-keyed count mapping as b-file text."""
    return "".join("%d %d\n" % (n, counts[n]) for n in sorted(counts))


def parse_bfile(text):
    """Inverse of :func:`emit_bfile`; rejects malformed lines."""
    counts = {}
    for line in text.splitlines():
        n_text, _, count_text = line.partition(" ")
        if not count_text or " " in count_text:
            raise ValueError("b-file lines carry exactly two fields: %r" % (line,))
        counts[int(n_text)] = int(count_text)
    return counts


def _component_text(component):
    if isinstance(component, int):
        return str(component)
    return nose_label(component)


def _census_rows(table, fields):
    projected = table.project(*fields)
    rows = []
    for key, count in projected.items():
        parts = key if isinstance(key, tuple) else (key,)
        rows.append((tuple(_component_text(c) for c in parts), count))
    rows.sort(key=lambda row: tuple(
        (0, int(part)) if part.isdigit() else (1, part) for part in row[0]
    ))
    return rows


def _render_table(header, rows):
    widths = [len(h) for h in header]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = []
    for row in [header] + rows:
        lines.append("  ".join(cell.rjust(w) for cell, w in zip(row, widths)))
    return "".join(line + "\n" for line in lines)


def _render_census(rows, fields, fmt):
    if fmt == "bfile":
        return "".join("%s %d\n" % ("/".join(key), count) for key, count in rows)
    if fmt == "csv":
        lines = ["key,count"]
        lines.extend("%s,%d" % ("/".join(key), count) for key, count in rows)
        return "".join(line + "\n" for line in lines)
    if fmt == "json":
        root = {}
        for key, count in rows:
            node = root
            for part in key[:-1]:
                node = node.setdefault(part, {})
            node[key[-1]] = count
        return json.dumps(root, indent=2) + "\n"
    header = list(fields) + ["count"]
    body = [list(key) + [str(count)] for key, count in rows]
    return _render_table(header, body)


def _emit_census(args, table, fields):
    if args.format == "bfile" and fields != ("perimeter",):
        args.command_parser.error("bfile output needs plain perimeter keys")
    rows = _census_rows(table, fields)
    write_text(_render_census(rows, fields, args.format), args.out)
    return 0


def _cmd_series(args):
    if args.by == "perimeter":
        counts = layered.perimeter_counts(args.max_perimeter)
        if args.format == "bfile":
            write_text(emit_bfile(counts), args.out)
            return 0
        rows = [((str(n),), counts[n]) for n in sorted(counts)]
        write_text(_render_census(rows, ("perimeter",), args.format), args.out)
        return 0
    table = layered.joint_table(layered.solve(args.max_perimeter))
    return _emit_census(args, table, SERIES_FIELDS[args.by])


def _cmd_census(args):
    table = brute.generate(args.max_perimeter, workers=args.threads)
    fields = (
        ("perimeter", "diagonals", "nose", "last_run")
        if args.classify
        else ("perimeter",)
    )
    return _emit_census(args, table, fields)


def _cmd_ratios(args):
    rows = closedform.ratio_table(args.max_perimeter)
    header = ["perimeter", "column_convex", "diagonally_convex", "ratio"]
    if args.format == "csv":
        lines = [",".join(header)]
        lines.extend(
            "%d,%d,%d,%s" % (r.perimeter, r.column_convex, r.diagonally_convex, r.ratio)
            for r in rows
        )
        text = "".join(line + "\n" for line in lines)
    elif args.format == "json":
        text = json.dumps([row._asdict() for row in rows], indent=2) + "\n"
    else:
        body = [
            [str(r.perimeter), str(r.column_convex), str(r.diagonally_convex), r.ratio]
            for r in rows
        ]
        text = _render_table(header, body)
    write_text(text, args.out)
    return 0


def _cmd_verify(args):
    results = verify.run_suites(
        [args.suite],
        order=args.order,
        d_samples=args.d_samples,
        workers=args.threads,
    )
    lines = []
    for r in results:
        line = "%s [%s] %s" % ("PASS" if r.passed else "FAIL", r.suite, r.name)
        if r.detail:
            line += ": " + r.detail
        lines.append(line)
    failed = sum(1 for r in results if not r.passed)
    lines.append("%d checks, %d failed" % (len(results), failed))
    write_text("".join(line + "\n" for line in lines), args.out)
    return 1 if failed else 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="dcpoly",
        description="Exact perimeter enumeration of diagonally convex polyominoes.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    series = commands.add_parser(
        "series",
        help="counts from the layered functional-equation iteration",
    )
    series.add_argument(
        "--max-perimeter",
        type=_even_perimeter(4),
        default=40,
        help="largest perimeter to report (even, default 40)",
    )
    series.add_argument(
        "--by",
        choices=sorted(SERIES_FIELDS),
        default="perimeter",
        help="statistic layout of the table (default perimeter)",
    )
    series.set_defaults(handler=_cmd_series, command_parser=series)

    census = commands.add_parser(
        "census",
        help="counts from the exhaustive shape generator",
    )
    census.add_argument(
        "--max-perimeter",
        type=_even_perimeter(4),
        default=16,
        help="largest perimeter to generate (even, default 16)",
    )
    census.add_argument(
        "--classify",
        action="store_true",
        help="break counts down by diagonals, nose class, and last run",
    )
    census.add_argument(
        "--threads",
        type=_positive_int,
        default=_default_threads(),
        help="worker processes; affects runtime only, never output"
        " (default from DCPOLY_THREADS)",
    )
    census.set_defaults(handler=_cmd_census, command_parser=census)

    ratios = commands.add_parser(
        "ratios",
        help="column-convex versus diagonally convex count ratios",
    )
    ratios.add_argument(
        "--max-perimeter",
        type=_even_perimeter(14),
        default=40,
        help="largest perimeter row (even, at least 14, default 40)",
    )
    ratios.set_defaults(handler=_cmd_ratios, command_parser=ratios)

    check = commands.add_parser(
        "verify",
        help="run the cross-route identity suites",
    )
    check.add_argument(
        "--suite",
        choices=verify.SUITE_NAMES + ("all",),
        default="all",
        help="which suite to run (default all)",
    )
    check.add_argument(
        "--order",
        type=_positive_int,
        default=verify.DEFAULT_ORDER,
        help="truncation order for the algebraic suites; the exhaustive"
        " cross-check caps its perimeter at 16 (default 40)",
    )
    check.add_argument(
        "--d-samples",
        type=_d_samples,
        default=verify.DEFAULT_D_SAMPLES,
        help="comma-separated rational samples for the diagonal marker"
        " (default 1,1/2,2,3)",
    )
    check.add_argument(
        "--threads",
        type=_positive_int,
        default=_default_threads(),
        help="worker processes for the exhaustive cross-check",
    )
    check.set_defaults(handler=_cmd_verify, command_parser=check)

    for sub in (series, census, ratios):
        sub.add_argument(
            "--format",
            choices=FORMATS if sub is not ratios else ("table", "csv", "json"),
            default="table",
            help="output format (default table)",
        )
    for sub in (series, census, ratios, check):
        sub.add_argument(
            "--out",
            default=None,
            help="write to this file instead of stdout (atomic rename)",
        )
    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
