"""Command line front end: ``ipset search|verify|construct|bounds|candidates``.

Exit codes: 0 success, 1 a check failed, 2 bad input, 3 search budget
exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from typing import Optional

from . import bounds
from .constructions import circular, facher
from .enumeration import candidate_points
from .errors import BudgetExceeded, ConstructionBudgetExceeded, InvalidParameter, NoUnitDistance
from .exact import (
    PointSet,
    PositionClass,
    diameter,
    extremal_distances,
    min_distance,
    validate,
)
from .search import default_workers, minimal_diameter
from .setfile import CacheRow, SetFileError, append_cache, format_rational, read_setfile, write_setfile

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

ALL_CHECKS = ("container", "hyperbola", "strips", "replay", "cube-root", "distance-one")


class UsageError(Exception):
    pass


def _position(text):
    try:
        return PositionClass.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _metadata(S: PointSet, provenance: str) -> dict:
    report = validate(S)
    meta = {"n": S.n, "provenance": provenance}
    if report.valid:
        meta["diameter"] = diameter(S)
        meta["position"] = report.position.label
    return meta


def _table(rows, out):
    widths = [max(len(str(r[i])) for r in rows) for i in range(len(rows[0]))]
    for r in rows:
        out.write("  ".join(str(c).rjust(w) for c, w in zip(r, widths)).rstrip() + "\n")


def cmd_search(args, out) -> int:
    if args.n < 3:
        raise UsageError(f"--n must be at least 3, got {args.n}")
    if args.max_diameter < 1:
        raise UsageError("--max-diameter must be positive")
    workers = args.threads or default_workers()
    label = args.position.label
    os.makedirs(args.out_dir, exist_ok=True)
    try:
        result = minimal_diameter(
            args.n, args.position, args.max_diameter, workers=workers, all_witnesses=args.all_witnesses
        )
    except BudgetExceeded as exc:
        row = CacheRow(args.n, label, None, "", exc.exhausted_up_to)
        for msg in append_cache(args.cache, row):
            print(f"warning: cache conflict: {msg}", file=sys.stderr)
        _table(
            [("n", "position", "d", "witnesses", "exhausted_up_to"), (args.n, label, "-", 0, exc.exhausted_up_to)],
            out,
        )
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    paths = []
    for idx, W in enumerate(result.witnesses):
        path = os.path.join(args.out_dir, f"n{args.n}_{label}_d{result.d}_{idx}.json")
        prov = f"search n={args.n} position={label} d={result.d}"
        write_setfile(path, W, _metadata(W, prov))
        paths.append(path)
    row = CacheRow(args.n, label, result.d, paths[0], result.exhausted_up_to)
    for msg in append_cache(args.cache, row):
        print(f"warning: cache conflict: {msg}", file=sys.stderr)
    _table(
        [
            ("n", "position", "d", "witnesses", "exhausted_up_to"),
            (args.n, label, result.d, len(result.witnesses), result.exhausted_up_to),
        ],
        out,
    )
    for p in paths:
        out.write(f"wrote {p}\n")
    return EXIT_OK


def _run_check(name, S, report):
    """Return ``(status, detail)`` with status in pass / FAIL / n/a."""
    semi = report.position >= PositionClass.SEMI_GENERAL
    n = S.n
    if name == "container":
        ok = bounds.square_container_check(S)
        return ("pass" if ok else "FAIL"), f"diameter {diameter(S)}"
    if name == "cube-root":
        if not semi:
            return "n/a", "not in semi-general position"
        md = min_distance(S)
        ok = bounds.cube_root_bound_holds(n, md)
        return ("pass" if ok else "FAIL"), f"min^3 = {md**3} >= n = {n}"
    if name == "distance-one":
        try:
            rep = bounds.distance_one_structure_check(S)
        except NoUnitDistance:
            return "n/a", "no unit distance"
        detail = f"unit pairs {rep.unit_pairs}" + ("" if rep.conforming else "; " + "; ".join(rep.violations))
        return ("pass" if rep.conforming else "FAIL"), detail
    if n < 4:
        return "n/a", "n < 4"
    if not semi:
        return "n/a", "not in semi-general position"
    if name == "hyperbola":
        ext = extremal_distances(S)
        ok = bounds.hyperbola_count_check(S)
        return ("pass" if ok else "FAIL"), f"n = {n} <= 4*{ext.closest}*{ext.m} = {4 * ext.closest * ext.m}"
    if name == "strips":
        ext = extremal_distances(S)
        if ext.m**5 <= ext.p**2:
            return "n/a", f"m^5 = {ext.m**5} <= p^2 = {ext.p**2} (hyperbola branch)"
        rep = bounds.strip_partition_check(S)
        return ("pass" if rep.passed else "FAIL"), f"q = {rep.q}, counts {rep.strip_counts}"
    if name == "replay":
        trace = bounds.replay_theorem_proof(S)
        lines = [f"branch {trace.branch.value}, p = {trace.p}, m = {trace.report.m}"]
        lines += [f"    {iq}" for iq in trace.inequalities]
        return ("pass" if trace.passed else "FAIL"), "\n".join(lines)
    raise UsageError(f"unknown check {name!r}")


def cmd_verify(args, out) -> int:
    checks = ALL_CHECKS if not args.checks else tuple(c.strip() for c in args.checks.split(",") if c.strip())
    for c in checks:
        if c not in ALL_CHECKS:
            raise UsageError(f"unknown check {c!r}; choose from {', '.join(ALL_CHECKS)}")
    try:
        S, _meta = read_setfile(args.path)
    except (OSError, SetFileError) as exc:
        raise UsageError(f"cannot read {args.path}: {exc}")
    report = validate(S)
    out.write(f"n = {S.n}, k = {S.k}\n")
    if not report.valid:
        out.write("validate: FAIL\n")
        for msg in report.problems():
            out.write(f"  {msg}\n")
        return EXIT_FAIL
    out.write(f"validate: pass (diameter {diameter(S)}, position {report.position.label})\n")
    failed = False
    for name in checks:
        status, detail = _run_check(name, S, report)
        label = "not applicable" if status == "n/a" else status
        out.write(f"{name}: {label} ({detail})\n")
        failed |= status == "FAIL"
    return EXIT_FAIL if failed else EXIT_OK


def cmd_construct(args, out) -> int:
    if args.family == "facher":
        if args.height is None or args.height < 1:
            raise UsageError("facher needs --height >= 1")
        S = facher(args.height)
        prov = f"facher height={args.height}"
        default = f"facher_h{args.height}.json"
    else:
        if args.n is None or args.n < 3:
            raise UsageError("circular needs --n >= 3")
        try:
            S = circular(args.n, args.max_hypotenuse)
        except ConstructionBudgetExceeded as exc:
            raise UsageError(str(exc))
        prov = f"circular n={args.n}"
        default = f"circular_n{args.n}.json"
    path = args.out or default
    write_setfile(path, S, _metadata(S, prov))
    report = validate(S)
    d = diameter(S) if report.valid else "-"
    pos = report.position.label if report.valid else "invalid"
    out.write(f"n = {S.n}, diameter = {d}, position = {pos}\n")
    out.write(f"wrote {path}\n")
    return EXIT_OK


BOUND_COLUMNS = ["n", "theorem", "linear", "min_dist", "remark", "upper", "collinear"]


def cmd_bounds(args, out) -> int:
    mode = bounds.CollinearLog.LOG2 if args.collinear_log == "log2" else bounds.CollinearLog.LOG_OF_TWICE
    try:
        rows = bounds.bound_table(
            args.n_from,
            args.n_to,
            c2=args.c2,
            c3=args.c3,
            delta=args.delta,
            epsilon=args.epsilon,
            log_base=args.log_base,
            collinear_log=mode,
        )
    except InvalidParameter as exc:
        raise UsageError(str(exc))
    body = [
        [str(r.n)]
        + [
            f"{v:.9f}"
            for v in (r.theorem_bound, r.linear_bound, r.min_dist_bound, r.remark_bound, r.upper_bound, r.collinear_bound)
        ]
        for r in rows
    ]
    if args.csv:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(BOUND_COLUMNS)
        writer.writerows(body)
    else:
        _table([BOUND_COLUMNS] + body, out)
    return EXIT_OK


def cmd_candidates(args, out) -> int:
    if args.d < 1:
        raise UsageError("--d must be positive")
    pool = candidate_points(args.d)
    rows = [["x", "r", "k", "a", "b", "on_line"]]
    for c in pool.on_line + pool.off_line():
        rows.append([format_rational(c.x), format_rational(c.r), str(c.k), str(c.a), str(c.b), str(int(c.on_line))])
    if args.csv:
        csv.writer(out, lineterminator="\n").writerows(rows)
        return EXIT_OK
    out.write(f"d = {args.d}: {len(pool.on_line)} on-line, {len(pool) - len(pool.on_line)} off-line candidates\n")
    out.write("on-line:\n")
    for c in pool.on_line:
        out.write(f"  x = {c.x}  (a, b) = ({c.a}, {c.b})\n")
    for k in sorted(pool.by_characteristic):
        out.write(f"k = {k}:\n")
        for c in pool.by_characteristic[k]:
            out.write(f"  ({c.x}, {c.r}, {k}, {c.a}, {c.b})\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ipset", description="Planar integral point sets in exact arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("search", help="minimal diameter of n-point sets")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--position", type=_position, default=PositionClass.ANY, help="any, semi or general")
    p.add_argument("--max-diameter", type=int, default=100)
    p.add_argument("--all-witnesses", action="store_true", help="write every witness at the minimal diameter")
    p.add_argument("--out-dir", default="results")
    p.add_argument("--cache", default=os.path.join("results", "cache.tsv"))
    p.add_argument("--threads", type=int, default=None, help="worker processes (default: $IPSET_THREADS or CPU count)")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="validate a set file and run the lemma checks")
    p.add_argument("path")
    p.add_argument("--checks", default="", help="comma separated subset of: " + ", ".join(ALL_CHECKS))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="build a facher or circular set")
    p.add_argument("family", choices=["facher", "circular"])
    p.add_argument("--height", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--max-hypotenuse", type=int, default=2000)
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("bounds", help="tabulate the bound formulas")
    p.add_argument("--from", dest="n_from", type=int, default=3)
    p.add_argument("--to", dest="n_to", type=int, default=20)
    p.add_argument("--c2", type=float, default=1.0)
    p.add_argument("--c3", type=float, default=1.0)
    p.add_argument("--delta", type=float, default=1.0)
    p.add_argument("--epsilon", type=float, default=1.0)
    p.add_argument("--log-base", type=float, default=None, help="default: natural log")
    p.add_argument("--collinear-log", choices=["twice", "log2"], default="twice",
                   help="read log 2(1+eps) as log(2(1+eps)) or log2(1+eps)")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("candidates", help="list the candidate pool for a diameter")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_candidates)
    return parser


def main(argv: Optional[list[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run(argv: list[str]) -> tuple[int, str]:
    """Run the CLI in-process and capture stdout; handy in tests."""
    buf = io.StringIO()
    try:
        code = main(argv, buf)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_USAGE
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
