"""Command-line interface: ``kslope {futaki,scan,slope,conic,verify}``.

Rationals always cross this boundary as exact strings ("p/q", or "n" for
integers), never as floats. Exit codes: 0 success, 1 verification failure,
2 usage or domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import product
from typing import Any, Iterable, Optional, Sequence

from .conic import UNIFORM_GENUS_BOUND, ConicParams, conic_destab, surface_invariants
from .errors import DomainError
from .exact import Poly, as_rational
from .futaki import FibrationSpec, FutakiReport, futaki_report
from .rt_slope import SlopeInput, mu_c, mu_global, slope_destabilizes
from .verify import run_all
from .weights import absorption_closed

FORMATS = ("table", "json", "csv")
ENV_FORMAT = "FUTAKI_OUTPUT_FORMAT"

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def fmt(x) -> str:
    return "" if x is None else str(x)


def parse_rational(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"malformed rational literal {text!r}") from None


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None


def parse_range(text: str) -> list[int]:
    """'3', '1..4', '-12..-5' or comma lists of those, in ascending order."""
    out: set[int] = set()
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            if ".." in item:
                lo, hi = item.split("..", 1)
                out.update(range(int(lo), int(hi) + 1))
            else:
                out.add(int(item))
        except ValueError:
            raise UsageError(f"bad integer range {item!r}") from None
    return sorted(out)


def parse_poly(text: str) -> Poly:
    return Poly(parse_rational(t) for t in text.split(","))


def report_record(rep: FutakiReport) -> dict[str, Any]:
    s = rep.spec
    rec = {
        "rank_e": s.e,
        "deg_e": s.E.degree,
        "rank_f": s.f,
        "deg_f": s.F.degree,
        "m": str(s.m),
        "r": s.r,
        "b0": rep.b0,
        "b1_const": rep.b1[0],
        "b1_g": rep.b1[1],
        "a0": rep.a0,
        "a1_const": rep.a1[0],
        "a1_g": rep.a1[1],
        "F0": rep.F0,
        "F1": rep.F1,
        "mu_r_E": rep.mu_r_E,
        "mu_r_F": rep.mu_r_F,
        "threshold": rep.genus_threshold,
        "verdict": rep.verdict.value,
    }
    if rep.genus is not None:
        rec["genus"] = rep.genus
        rec["F_at_genus"] = rep.futaki_at_genus
    return rec


SCAN_FIELDS = ("rank_e", "deg_e", "rank_f", "deg_f", "m", "r", "mu_r_E", "mu_r_F", "F0", "F1", "threshold", "verdict")


def _encode(v):
    if isinstance(v, Fraction):
        return str(v)
    return v


def render(records: Sequence[dict[str, Any]], form: str, single: bool = False) -> str:
    if form == "json":
        data = [{k: _encode(v) for k, v in r.items()} for r in records]
        return json.dumps(data[0] if single else data, indent=2) + "\n"
    if form == "csv":
        buf = io.StringIO()
        fields = list(records[0]) if records else []
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        for r in records:
            w.writerow({k: fmt(v) for k, v in r.items()})
        return buf.getvalue()
    if single:
        rec = records[0]
        width = max(len(k) for k in rec)
        return "".join(f"{k:<{width}}  {fmt(v)}\n" for k, v in rec.items())
    if not records:
        return ""
    fields = list(records[0])
    rows = [[fmt(r[k]) for k in fields] for r in records]
    widths = [max(len(f), *(len(row[i]) for row in rows)) for i, f in enumerate(fields)]
    lines = ["  ".join(f.ljust(w) for f, w in zip(fields, widths)).rstrip()]
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _futaki_table(rep: FutakiReport) -> str:
    s = rep.spec
    lines = [
        f"E                    rank {s.e}, degree {s.E.degree}",
        f"F                    rank {s.f}, degree {s.F.degree}",
        f"m                    {s.m}  (r = {s.r}, dim X = {s.dim})",
        f"b0                   {rep.b0}",
        f"b1(g)                {rep.b1[0]} + g*({rep.b1[1]})",
        f"a0                   {rep.a0}",
        f"a1(g)                {rep.a1[0]} + g*({rep.a1[1]})",
        f"F(g)                 {rep.F0} + g*({rep.F1})",
        f"mu^r(E)              {rep.mu_r_E}",
        f"mu^r(F)              {rep.mu_r_F}",
        f"threshold g*         {fmt(rep.genus_threshold) or 'none'}",
    ]
    if rep.genus is not None:
        lines.append(f"F({rep.genus})".ljust(21) + f"{rep.futaki_at_genus}")
    lines.append(f"verdict              {rep.verdict.value}")
    if s.m.has_linear_factor:
        lines.append("warning              some m_i = 1 (the geometric setting wants m_i >= 2)")
    return "\n".join(lines) + "\n"


def cmd_futaki(args) -> int:
    spec = FibrationSpec.from_ranks(args.rank_e, args.deg_e, args.rank_f, args.deg_f, parse_int_list(args.m))
    rep = futaki_report(spec, genus=args.genus)
    if args.format == "table":
        out = _futaki_table(rep)
    else:
        out = render([report_record(rep)], args.format, single=True)
    sys.stdout.write(out)
    return EXIT_OK


def _scan_one(job: tuple[int, int, int, int, tuple[int, ...], Optional[int]]):
    e, de, f, df, ms, genus = job
    try:
        spec = FibrationSpec.from_ranks(e, de, f, df, ms)
    except DomainError:
        return None
    rep = futaki_report(spec, genus=genus)
    rec = {k: v for k, v in report_record(rep).items() if k in SCAN_FIELDS}
    if genus is not None:
        rec["genus"] = genus
        rec["F_at_genus"] = rep.futaki_at_genus
    return rec


def scan_records(
    rank_e: Iterable[int],
    rank_f: Iterable[int],
    deg_e: Iterable[int],
    deg_f: Iterable[int],
    ms: Iterable[Sequence[int]],
    genus: Optional[int] = None,
    jobs: int = 1,
) -> tuple[list[dict[str, Any]], int]:
    """All valid specs in lexicographic parameter order, plus the skipped count."""
    grid = [
        (e, de, f, df, tuple(m), genus)
        for e, f, de, df, m in product(sorted(rank_e), sorted(rank_f), sorted(deg_e), sorted(deg_f), sorted(map(tuple, ms)))
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan_one, grid, chunksize=64))
    else:
        results = [_scan_one(job) for job in grid]
    records = [r for r in results if r is not None]
    return records, len(results) - len(records)


def cmd_scan(args) -> int:
    ms = [parse_int_list(m) for m in args.m]
    records, skipped = scan_records(
        parse_range(args.rank_e),
        parse_range(args.rank_f),
        parse_range(args.deg_e),
        parse_range(args.deg_f),
        ms,
        genus=args.genus,
        jobs=args.jobs,
    )
    print(f"{len(records)} specifications evaluated, {skipped} skipped", file=sys.stderr)
    if not records:
        raise UsageError("no valid specifications in the requested ranges")
    text = render(records, args.format)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc.strerror}") from None
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_slope(args) -> int:
    inp = SlopeInput(parse_poly(args.alpha0), parse_poly(args.alpha1), parse_rational(args.c))
    rec = {
        "mu_c": mu_c(inp),
        "mu_X": mu_global(inp),
        "destabilizes": slope_destabilizes(inp),
    }
    if args.format == "table":
        rec = {"alpha0(x)": inp.alpha0.format("x"), "alpha1(x)": inp.alpha1.format("x"), "c": inp.c, **rec}
        rec["destabilizes"] = "true" if rec["destabilizes"] else "false"
    sys.stdout.write(render([rec], args.format, single=True))
    return EXIT_OK


def cmd_conic(args) -> int:
    params = ConicParams(args.genus, args.deg_d, args.deg_h)
    inv = surface_invariants(params)
    rep = conic_destab(params)
    rec: dict[str, Any] = {
        "genus": params.g,
        "deg_d": params.d,
        "deg_h": params.deg_h,
        "chi": inv.chi,
        "K_squared": inv.K_squared,
        "euler_number": inv.euler_number,
        "singular_fibres": inv.singular_fibres,
    }
    rec.update({k: v for k, v in report_record(rep).items() if k not in rec})
    thr = rep.genus_threshold
    rec["bound_g_gt_16_sufficient"] = thr is not None and thr <= UNIFORM_GENUS_BOUND
    if args.format == "table":
        rec["bound_g_gt_16_sufficient"] = "yes" if rec["bound_g_gt_16_sufficient"] else "no"
    sys.stdout.write(render([rec], args.format, single=True))
    return EXIT_OK


def _mutated_s2(f: int, q: int, k: int):
    s1, s2, s3 = absorption_closed(f, q, k)
    return s1, -s2, s3


def cmd_verify(args) -> int:
    closed = _mutated_s2 if args.mutate_s2 else absorption_closed
    results = run_all(closed)
    total = 0
    for res in results:
        total += res.checked
        status = "PASS" if res.ok else "FAIL"
        print(f"{status}  {res.name:<24} {res.checked:>7} checks  {len(res.failures)} failures")
        for msg in res.failures[:5]:
            print(f"      {msg}")
    ok = all(r.ok for r in results)
    print(f"{'all suites passed' if ok else 'verification FAILED'}: {total} identity instances")
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def build_parser(default_format: str) -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kslope", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=FORMATS, default=default_format,
                       help=f"output format (default from ${ENV_FORMAT}, else table)")

    p = sub.add_parser("futaki", help="Futaki invariant and verdict for one instance")
    p.add_argument("--rank-e", type=int, required=True)
    p.add_argument("--deg-e", type=int, required=True)
    p.add_argument("--rank-f", type=int, required=True)
    p.add_argument("--deg-f", type=int, required=True)
    p.add_argument("--m", required=True, help="multidegrees, comma separated, e.g. 2,3")
    p.add_argument("--genus", type=int)
    add_format(p)
    p.set_defaults(func=cmd_futaki)

    p = sub.add_parser("scan", help="parameter sweep over ranks, degrees and multidegrees")
    p.add_argument("--rank-e", required=True, help="range such as 3 or 2..6 or 2,4")
    p.add_argument("--rank-f", required=True)
    p.add_argument("--deg-e", required=True, help="negative ranges need '=': --deg-e=-12..-5")
    p.add_argument("--deg-f", required=True)
    p.add_argument("--m", action="append", required=True, help="one multidegree list; repeat to scan several")
    p.add_argument("--genus", type=int)
    p.add_argument("--out", help="write to FILE instead of stdout")
    p.add_argument("--jobs", type=int, default=1)
    add_format(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("slope", help="Ross-Thomas slope comparison from alpha0, alpha1")
    p.add_argument("--alpha0", required=True, help="ascending coefficients, e.g. 2,-1 for 2 - x")
    p.add_argument("--alpha1", required=True)
    p.add_argument("--c", required=True, help="rational such as 1 or 1/2")
    add_format(p)
    p.set_defaults(func=cmd_slope)

    p = sub.add_parser("conic", help="conic bundle surface invariants and verdict")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--deg-d", type=int, required=True)
    p.add_argument("--deg-h", type=int, default=2)
    add_format(p)
    p.set_defaults(func=cmd_conic)

    p = sub.add_parser("verify", help="run the identity self-checks")
    p.add_argument("--mutate-s2", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    default_format = os.environ.get(ENV_FORMAT, "table")
    if default_format not in FORMATS:
        print(f"kslope: error: {ENV_FORMAT} must be one of {', '.join(FORMATS)}", file=sys.stderr)
        return EXIT_USAGE
    parser = build_parser(default_format)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (DomainError, UsageError) as exc:
        print(f"kslope: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
