"""Command-line front end: curves, thresholds, verification, sampling, tables."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import benchmarks
from .metrics import metrics, threshold, uncoded_qber
from .montecarlo import estimate
from .schemes import SCHEME_NAMES, UnknownSchemeError, scheme
from .verify import VerifyContext, run_all

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def fmt(x) -> str:
    return "" if x is None else format(float(x), ".12g")


def exact(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_grid(text: str) -> list[Fraction]:
    """``a:b:n`` gives n evenly spaced points from a to b inclusive."""
    try:
        a, b, n = text.split(":")
        lo, hi, steps = Fraction(a), Fraction(b), int(n)
    except ValueError:
        raise UsageError(f"bad grid {text!r}, expected start:stop:steps") from None
    if steps < 1:
        raise UsageError("grid needs at least one step")
    if not (0 <= lo <= 1 and 0 <= hi <= 1):
        raise UsageError("grid must lie within [0, 1]")
    if steps == 1:
        return [lo]
    return [lo + (hi - lo) * i / (steps - 1) for i in range(steps)]


def parse_points(text: str) -> list[Fraction]:
    try:
        points = [Fraction(t) for t in text.split(",") if t]
    except ValueError:
        raise UsageError(f"bad p list {text!r}") from None
    if not points or any(not 0 <= p <= 1 for p in points):
        raise UsageError("p values must lie within [0, 1]")
    return points


def resolve_schemes(text: Optional[str]) -> list[str]:
    names = text.split(",") if text else list(SCHEME_NAMES)
    for name in names:
        try:
            scheme(name)
        except UnknownSchemeError as exc:
            raise UsageError(str(exc.args[0])) from None
    return sorted(names)


def grid_from(args) -> list[Fraction]:
    if args.p:
        return parse_points(args.p)
    return parse_grid(args.p_grid)


def render(rows: list[dict], columns: Sequence[str], form: str) -> str:
    if form == "json":
        return json.dumps(rows, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(buf, columns, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def cmd_curves(args) -> tuple[str, int]:
    columns = ["p", "scheme", "qber", "yield", "goodput"]
    if args.exact:
        columns += ["qber_exact", "yield_exact", "goodput_exact"]
    rows = []
    for name in resolve_schemes(args.schemes):
        report = metrics(scheme(name), with_threshold=False)
        for p in sorted(grid_from(args)):
            values = report.at(p)
            row = {"p": fmt(p), "scheme": name}
            row.update({k: fmt(v) for k, v in values.items()})
            if args.exact:
                row.update({f"{k}_exact": exact(v) for k, v in values.items()})
            rows.append(row)
    return render(rows, columns, args.format), EXIT_OK


def cmd_threshold(args) -> tuple[str, int]:
    rows = []
    for name in resolve_schemes(args.schemes):
        s = scheme(name)
        report = metrics(s, with_threshold=False)
        p_th = threshold(report.qber, uncoded_qber(s.k))
        rows.append({"scheme": name, "p_th": "none" if p_th is None else fmt(p_th)})
    return render(rows, ["scheme", "p_th"], args.format), EXIT_OK


def cmd_mc(args) -> tuple[str, int]:
    if args.trials < 1:
        raise UsageError("need at least one trial")
    rows = []
    for name in resolve_schemes(args.schemes):
        s = scheme(name)
        for p in sorted(grid_from(args)):
            est = estimate(s, float(p), args.trials, args.seed, args.workers)
            goodput = None if est.undefined else Fraction(s.k, s.n) * (1 - Fraction(est.qber_hat))
            rows.append({
                "p": fmt(p),
                "scheme": name,
                "qber": "undefined" if est.undefined else fmt(est.qber_hat),
                "yield": fmt(est.yield_hat),
                "goodput": "undefined" if goodput is None else fmt(goodput),
                "stderr": "undefined" if est.undefined else fmt(est.stderr),
                "trials": est.trials,
                "retained": est.retained,
                "successes": est.successes,
            })
    columns = ["p", "scheme", "qber", "yield", "goodput", "stderr", "trials", "retained", "successes"]
    return render(rows, columns, args.format), EXIT_OK


def cmd_verify(args) -> tuple[str, int]:
    only = None
    if args.criteria:
        try:
            only = [int(c) for c in args.criteria.split(",")]
        except ValueError:
            raise UsageError(f"bad criteria list {args.criteria!r}") from None
        if any(c not in range(1, 11) for c in only):
            raise UsageError("criteria are numbered 1 to 10")
    ctx = VerifyContext(mc_trials=args.trials, seed=args.seed, workers=args.workers)
    results = run_all(ctx, only)
    for r in results:
        print(f"criterion {r.number:>2} {'PASS' if r.passed else 'FAIL'}  {r.title}",
              file=sys.stderr)
    ok = all(r.passed for r in results)
    summary = {"passed": ok, "criteria": [r.to_json() for r in results]}
    return json.dumps(summary, indent=2) + "\n", EXIT_OK if ok else EXIT_FAIL


def cmd_resources(args) -> tuple[str, int]:
    tables = ["detection", "correction"] if args.table == "both" else [args.table]
    rows = [r for t in tables for r in benchmarks.resource_table(t)]
    if args.format == "json":
        return json.dumps([r.__dict__ for r in rows], indent=2) + "\n", EXIT_OK
    return benchmarks.resources_csv(rows), EXIT_OK


def cmd_scheme(args) -> tuple[str, int]:
    (name,) = resolve_schemes(args.name)
    return json.dumps(scheme(name).to_json(), indent=2) + "\n", EXIT_OK


def cmd_lut(args) -> tuple[str, int]:
    (name,) = resolve_schemes(args.name)
    lut = scheme(name).policy.lut
    if lut is None:
        raise UsageError(f"{name} has no lookup table")
    return json.dumps(lut.to_json(), indent=2) + "\n", EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dqcomm",
        description="Exact and sampled performance of direct quantum communication schemes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, grid=False, schemes=True):
        if schemes:
            p.add_argument("--schemes", help="comma-separated scheme names (default: all)")
        if grid:
            p.add_argument("--p-grid", default="0:0.5:11", help="start:stop:steps")
            p.add_argument("--p", help="explicit comma-separated p values")
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        p.add_argument("--out", help="write here instead of standard output")

    p = sub.add_parser("curves", help="QBER, yield and goodput on a p grid")
    common(p, grid=True)
    p.add_argument("--exact", action="store_true", help="add exact num/den columns")
    p.set_defaults(func=cmd_curves)

    p = sub.add_parser("threshold", help="crossing with the uncoded QBER")
    common(p)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("mc", help="Monte Carlo estimates")
    common(p, grid=True)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("verify", help="run the acceptance suite")
    p.add_argument("--criteria", help="comma-separated subset, e.g. 1,4")
    p.add_argument("--trials", type=int, default=10**6, help="Monte Carlo trials")
    p.add_argument("--seed", type=int, default=VerifyContext.seed)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("resources", help="resource comparison tables")
    p.add_argument("--table", choices=["detection", "correction", "both"], default="both")
    common(p, schemes=False)
    p.set_defaults(func=cmd_resources)

    p = sub.add_parser("scheme", help="export a scheme as JSON")
    p.add_argument("name")
    p.add_argument("--out")
    p.set_defaults(func=cmd_scheme)

    p = sub.add_parser("lut", help="export a scheme's lookup table as JSON")
    p.add_argument("name")
    p.add_argument("--out")
    p.set_defaults(func=cmd_lut)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text, code = args.func(args)
    except UsageError as exc:
        print(f"dqcomm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
