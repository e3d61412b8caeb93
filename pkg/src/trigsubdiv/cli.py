"""Command-line interface.

    trigsubdiv mask      --m 4 --alpha pi/6 --levels 3
    trigsubdiv refine    --m 2 --alpha pi/180 --levels 3 --input square.csv --format svg
    trigsubdiv analyze   --m 4 --alpha pi/6 --levels 12
    trigsubdiv reproduce --m 2 --n 12 --levels 3
    trigsubdiv limits    --m 3

Exit status: 0 success, 1 numerical or check failure, 2 usage/validation error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import full_report
from .errors import InvalidTension, SubdivisionError
from .mask import SchemeFamily, check_tension, stationary_limit_fractions
from .reproduce import (
    CircleSample,
    basis_limit_symmetry,
    matched_tension,
    verify_circle_reproduction,
    verify_trig_reproduction,
)
from .subdivide import ControlPolygon, refine_to_level

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

_ANGLE = re.compile(
    r"^\s*(?:(?P<num>[0-9]*\.?[0-9]+)\s*\*?\s*)?pi\s*(?:/\s*(?P<den>[0-9]*\.?[0-9]+))?\s*$"
)


class UsageError(Exception):
    pass


def parse_angle(text: str) -> float:
    """Parse ``pi``, ``pi/N``, ``K*pi/N``, ``Kpi/N`` or a decimal number of radians."""
    match = _ANGLE.match(text.lower())
    if match:
        num = float(match["num"]) if match["num"] else 1.0
        den = float(match["den"]) if match["den"] else 1.0
        if den == 0:
            raise ValueError(f"zero denominator in angle {text!r}")
        return num * math.pi / den
    try:
        value = float(text)
    except ValueError:
        raise ValueError(f"cannot parse angle {text!r}; use radians or pi/N") from None
    if not math.isfinite(value):
        raise ValueError(f"angle must be finite, got {text!r}")
    return value


def _family(args) -> SchemeFamily:
    try:
        alpha = check_tension(args.alpha)
    except InvalidTension:
        raise UsageError(
            f"--alpha must lie in the open interval (0, pi/3) = (0, {math.pi / 3:.17g}); "
            f"got {args.alpha!r}"
        ) from None
    if args.m < 2:
        raise UsageError(f"--m must be >= 2, got {args.m}")
    return SchemeFamily(args.m, alpha, args.normalization == "normalized")


def _dump_json(payload) -> str:
    return json.dumps(payload, indent=2, allow_nan=True) + "\n"


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_mask(args) -> int:
    family = _family(args)
    records = []
    for k in range(args.levels + 1):
        raw = family.with_policy(False).mask(k)
        norm = family.with_policy(True).mask(k)
        records.append(
            {"k": k, "raw": raw.tolist(), "normalized": norm.tolist(), "sum": raw.total}
        )
    _emit(_dump_json({"m": args.m, "alpha": family.tension, "levels": records}), args.output)
    return EXIT_OK


def read_polygon(path: str, topology: str | None = None) -> ControlPolygon:
    """Read CSV rows ``x,y[,z...]`` or JSON ``{"topology": ..., "points": [...]}``."""
    text = Path(path).read_text(encoding="utf-8")
    stripped = text.strip()
    if not stripped:
        raise UsageError(f"{path}: empty input")
    if stripped.startswith(("{", "[")):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise UsageError(f"{path}: invalid JSON ({exc})") from None
        if isinstance(data, list):
            data = {"points": data}
        points = data.get("points")
        topo = topology or data.get("topology", "closed")
    else:
        points = []
        for row in csv.reader(io.StringIO(stripped)):
            if not row or all(not cell.strip() for cell in row):
                continue
            try:
                points.append([float(cell) for cell in row])
            except ValueError:
                raise UsageError(f"{path}: non-numeric CSV row {row!r}") from None
        topo = topology or "closed"
    if not points:
        raise UsageError(f"{path}: no points")
    try:
        arr = np.asarray(points, dtype=float)
    except ValueError:
        raise UsageError(f"{path}: rows have inconsistent dimension") from None
    if arr.ndim != 2 or not np.all(np.isfinite(arr)):
        raise UsageError(f"{path}: points must be finite rows of equal length")
    if topo not in ("open", "closed"):
        raise UsageError(f"{path}: topology must be 'open' or 'closed', got {topo!r}")
    return ControlPolygon(arr, topo)


def format_csv(poly: ControlPolygon) -> str:
    return "".join(",".join(f"{v:.17g}" for v in row) + "\n" for row in poly.points)


def format_json(poly: ControlPolygon) -> str:
    payload = {
        "topology": poly.topology,
        "level": poly.level,
        "points": [[float(v) for v in row] for row in poly.points],
    }
    return _dump_json(payload)


def format_svg(control: ControlPolygon, refined: ControlPolygon) -> str:
    """Control polygon dashed, refined polygon solid; SVG y axis points down."""
    if control.dim < 2:
        raise UsageError("SVG output needs at least two coordinates per point")
    both = np.vstack([control.points[:, :2], refined.points[:, :2]])
    lo, hi = both.min(axis=0), both.max(axis=0)
    span = np.maximum(hi - lo, 1e-12)
    margin = 0.05 * span
    x0, y0 = lo - margin
    w, h = span + 2 * margin

    def path(poly: ControlPolygon) -> tuple[str, str]:
        pts = " ".join(f"{x:.9g},{-y:.9g}" for x, y in poly.points[:, :2])
        tag = "polygon" if poly.closed else "polyline"
        return tag, pts

    stroke = f"{max(w, h) / 400:.6g}"
    ctag, cpts = path(control)
    rtag, rpts = path(refined)
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{x0:.9g} {-(y0 + h):.9g} {w:.9g} {h:.9g}">\n'
        f'  <{ctag} points="{cpts}" fill="none" stroke="black" stroke-width="{stroke}" '
        f'stroke-dasharray="{float(stroke) * 4:.6g},{float(stroke) * 3:.6g}"/>\n'
        f'  <{rtag} points="{rpts}" fill="none" stroke="blue" stroke-width="{stroke}"/>\n'
        "</svg>\n"
    )


def cmd_refine(args) -> int:
    if not args.input:
        raise UsageError("refine needs --input")
    family = _family(args)
    poly = read_polygon(args.input, "open" if args.open else None)
    refined = refine_to_level(poly, family, args.levels)
    if args.format == "csv":
        text = format_csv(refined)
    elif args.format == "json":
        text = format_json(refined)
    else:
        text = format_svg(poly, refined)
    _emit(text, args.output)
    return EXIT_OK


def cmd_analyze(args) -> int:
    family = _family(args)
    report = full_report(family, max(args.levels, 5))
    _emit(_dump_json(report.to_dict()), args.output)
    return EXIT_OK if report.checks_passed else EXIT_FAILURE


def cmd_reproduce(args) -> int:
    if args.n < 3:
        raise UsageError(f"--n must be >= 3, got {args.n}")
    alpha = args.alpha if args.alpha is not None else matched_tension(args.n, args.m)
    args.alpha = alpha
    args.normalization = "raw"
    family = _family(args)
    circle = verify_circle_reproduction(CircleSample(args.n), family, args.levels, args.tol)
    trig = [
        verify_trig_reproduction(family, levels=max(args.levels, 1), tol=args.tol, kind=kind)
        for kind in ("cos", "sin")
    ]
    symmetry = basis_limit_symmetry(family, args.levels, tol=1e-12)
    checks = {
        "circle": {"passed": circle.passed, "max_radius_error": circle.max_radius_error,
                   "points": circle.points},
        **{
            f"trig_{t.kind}": {"passed": t.passed, "residual": t.residual,
                               "phases": list(t.phases)}
            for t in trig
        },
        "symmetry": {"passed": symmetry.symmetric, "max_asymmetry": symmetry.max_asymmetry,
                     "center": symmetry.center},
    }
    ok = all(c["passed"] for c in checks.values())
    payload = {"m": args.m, "n": args.n, "alpha": family.tension, "levels": args.levels,
               "tol": args.tol, "passed": ok, "checks": checks}
    _emit(_dump_json(payload), args.output)
    return EXIT_OK if ok else EXIT_FAILURE


def cmd_limits(args) -> int:
    if args.m < 2:
        raise UsageError(f"--m must be >= 2, got {args.m}")
    fr = stationary_limit_fractions(args.m)
    payload = {
        "m": args.m,
        "limit": [float(f) for f in fr],
        "fractions": [str(f) for f in fr],
        "sum": str(sum(fr)),
    }
    _emit(_dump_json(payload), args.output)
    return EXIT_OK


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def _angle(text: str) -> float:
    try:
        return parse_angle(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trigsubdiv",
        description="Non-stationary subdivision from trigonometric B-splines",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, alpha_required=True, levels_default=0):
        p.add_argument("--m", type=int, required=True, help="number of points in the stencil")
        if alpha_required:
            p.add_argument("--alpha", type=_angle, required=True,
                           help="tension in radians, e.g. pi/6 or 0.5")
        p.add_argument("--levels", type=_nonneg_int, default=levels_default)
        p.add_argument("--output", "-o", help="write here instead of stdout")

    p = sub.add_parser("mask", help="print masks for levels 0..L")
    common(p)
    p.set_defaults(func=cmd_mask, normalization="raw")

    p = sub.add_parser("refine", help="refine a polygon read from CSV or JSON")
    common(p, levels_default=3)
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--format", choices=("csv", "json", "svg"), default="csv")
    p.add_argument("--normalization", choices=("raw", "normalized"), default="normalized")
    p.add_argument("--open", action="store_true", help="treat CSV input as an open polygon")
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser("analyze", help="smoothness / asymptotic-equivalence report")
    common(p, levels_default=12)
    p.set_defaults(func=cmd_analyze, normalization="normalized")

    p = sub.add_parser("reproduce", help="circle, trigonometric and symmetry checks")
    common(p, alpha_required=False, levels_default=3)
    p.add_argument("--n", type=int, default=12, help="circle sample count")
    p.add_argument("--alpha", type=_angle, default=None,
                   help="tension; defaults to the value matched to --n")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("limits", help="exact stationary limit mask")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_limits)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"trigsubdiv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SubdivisionError as exc:
        print(f"trigsubdiv: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except OSError as exc:
        print(f"trigsubdiv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
