"""Command-line front end: ``selfaffine <command> IFS.json [options]``.

Exit status: 0 success, 2 invalid input or options, 3 budget exhausted,
4 overlap found while ``--fail-on-overlap`` is set.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

from . import dimensions as dims
from .estimator import (DEFAULT_MAX_EXPONENT, box_count, cover, estimate_box_dimension,
                        occupancy_grid, write_pgm)
from .ifs import (DEFAULT_MAP_CAP, BudgetExceededError, IFSFormatError, format_rational,
                  load_ifs, project, to_rational)
from .separation import DEFAULT_N_MAX, DEFAULT_RATE_FLOOR, hochman_report
from .subsystem import approximate_subsystem

EXIT_OK, EXIT_INVALID, EXIT_BUDGET, EXIT_OVERLAP = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _exact(text: str) -> Fraction:
    try:
        value = to_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="selfaffine",
        description="Dimension theory of planar diagonal affine IFSs with overlaps.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("input", help="IFS document (JSON)")
        p.add_argument("--cap", type=_positive_int, default=DEFAULT_MAP_CAP,
                       help="enumeration budget in words/maps (default %(default)s)")
        return p

    p = add("dim", "attractor dimension report with case tag (JSON)")
    p.add_argument("--weights", help="comma-separated weights for the measure dimension "
                                     "(default: weights from the document, if any)")
    p.add_argument("--hochman-depth", type=_positive_int,
                   help="also run the separation check on the required axes to this depth")

    p = add("pressure", "pressure value or its root")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--t", type=float, help="evaluate the pressure at t >= 0")
    group.add_argument("--root", action="store_true", help="print the affinity dimension")

    p = add("check-hochman", "finite-depth separation report for one axis (JSON)")
    p.add_argument("--axis", choices=("x", "y"), default="x")
    p.add_argument("--n", type=_positive_int, default=DEFAULT_N_MAX, help="maximum word length")
    p.add_argument("--rate-floor", type=_positive_float, default=DEFAULT_RATE_FLOOR)
    p.add_argument("--fail-on-overlap", action="store_true",
                   help="exit with status 4 when a complete overlap is found")

    p = add("subsystem", "strongly separated homogeneous subsystem (JSON)")
    p.add_argument("--epsilon", type=_positive_float, required=True)
    p.add_argument("--k-max", type=_positive_int, default=12)

    p = add("boxcount", "box-counting series (CSV)")
    p.add_argument("--max-exponent", type=int, default=10,
                   help="finest scale is 2**-max_exponent (3..%d)" % DEFAULT_MAX_EXPONENT)

    p = add("render", "occupancy raster of the attractor cover (plain PGM)")
    p.add_argument("--delta", type=_exact, required=True, help="cell size, e.g. 1/256")
    p.add_argument("--out", required=True, help="output .pgm path")
    return parser


def _parse_weights(text: str, m: int) -> dims.WeightVector:
    try:
        values = [to_rational(part) for part in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"--weights: {exc}") from exc
    if len(values) != m:
        raise UsageError(f"--weights: {len(values)} weights for {m} maps")
    try:
        return dims.WeightVector(tuple(float(v) for v in values))
    except ValueError as exc:
        raise UsageError(f"--weights: {exc}") from exc


def _dim(doc, args) -> dict:
    ifs = doc.ifs
    report = dims.theorem_b_dimension(ifs)
    out = report.to_dict()
    out["affinity_dimension"] = report.t0
    out["natural_weights"] = list(dims.natural_weights(ifs).probabilities)

    weights = None
    if args.weights:
        weights = _parse_weights(args.weights, len(ifs))
    elif doc.weights is not None:
        try:
            weights = dims.WeightVector(tuple(float(w) for w in doc.weights))
        except ValueError as exc:
            raise UsageError(f"document weights: {exc}") from exc
    out["theorem_a"] = dims.lyapunov_dimension(weights, ifs).to_dict() if weights else None

    if args.hochman_depth:
        evidence = {}
        axes = set(report.hypotheses["hochman_required"])
        if out["theorem_a"]:
            axes |= set(out["theorem_a"]["hypotheses"]["hochman_required"])
        for axis in sorted(axes):
            sep = hochman_report(project(ifs, axis), args.hochman_depth, cap=args.cap)
            evidence[axis] = {"verdict": sep.verdict, "depth": args.hochman_depth,
                              "min_rate": sep.min_rate}
        out["hochman_evidence"] = evidence
        out["hypotheses"]["hochman_checked"] = True
    return out


def _write_atomic(path: Path, writer) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", suffix=".tmp")
    os.close(fd)
    try:
        writer(tmp)
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)


def _emit_json(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = load_ifs(args.input)
        ifs = doc.ifs
        if args.command == "dim":
            _emit_json(_dim(doc, args))
        elif args.command == "pressure":
            if args.root:
                value = dims.affinity_dimension(ifs)
            else:
                if args.t < 0:
                    raise UsageError("--t must be non-negative")
                value = dims.pressure(ifs, args.t)
            sys.stdout.write(f"{value!r}\n")
        elif args.command == "check-hochman":
            report = hochman_report(project(ifs, args.axis), args.n, args.rate_floor, args.cap)
            payload = report.to_dict()
            payload["axis"] = args.axis
            _emit_json(payload)
            if args.fail_on_overlap and report.verdict == "overlap_found":
                return EXIT_OVERLAP
        elif args.command == "subsystem":
            _emit_json(approximate_subsystem(ifs, args.epsilon, args.k_max, cap=args.cap).to_dict())
        elif args.command == "boxcount":
            if not ifs.maps_unit_square_into_itself:
                raise UsageError("boxcount needs every map to send [0,1]^2 into itself")
            series = estimate_box_dimension(ifs, args.max_exponent, cap=args.cap)
            sys.stdout.write(series.to_csv())
            sys.stderr.write(f"slope={series.slope!r} r_squared={series.r_squared!r}\n")
        elif args.command == "render":
            if not ifs.maps_unit_square_into_itself:
                raise UsageError("render needs every map to send [0,1]^2 into itself")
            if args.delta <= 0:
                raise UsageError("--delta must be positive")
            grid = occupancy_grid(cover(ifs, float(args.delta) / 2, args.cap), args.delta)
            _write_atomic(Path(args.out), lambda tmp: write_pgm(grid, tmp))
            _emit_json({"delta": format_rational(args.delta), "count": int(grid.sum()),
                        "out": str(args.out)})
    except IFSFormatError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    except BudgetExceededError as exc:
        if getattr(exc, "partial", None) is not None and hasattr(exc.partial, "to_dict"):
            _emit_json(exc.partial.to_dict())
        sys.stderr.write(f"budget exhausted: {exc}\n")
        return EXIT_BUDGET
    except (UsageError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    return EXIT_OK


def main() -> None:
    sys.exit(run())
