"""Command line front end.

Exit status: 0 on success, 2 on usage errors, 1 on data errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from contextlib import contextmanager

import numpy as np

from . import bench as bench_mod
from .data import DataError, DataMatrix, index_for, load_csv
from .depth import (
    AugmentationConfig,
    contour_levels,
    external_point_depth,
    sample_depths,
    sample_point_depth,
    tukey_median,
)
from .generators import KINDS, GeneratorSpec, generate
from .hull import UnsupportedDimensionError, contours_from_level_sets
from .oracle import accuracy_report


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    return int(os.environ.get("ABCDEPTH_SEED", "0"))


def _aug(args) -> AugmentationConfig:
    return AugmentationConfig(
        n_artificial=args.artificial,
        inflate=args.inflate,
        seed=_seed(args),
        domain=args.domain,
        far_inflate=args.far_inflate,
        l=args.l,
        p=args.p,
    )


def _load(args) -> DataMatrix:
    if not args.input:
        raise DataError("--input is required")
    return load_csv(args.input, has_header=args.header)


@contextmanager
def _sink(path):
    if path:
        with open(path, "w", newline="") as fh:
            yield fh
    else:
        yield sys.stdout


def _emit(args, payload, rows=None, header=None) -> None:
    with _sink(args.out) as fh:
        if args.format == "csv" and rows is not None:
            writer = csv.writer(fh, lineterminator="\n")
            if header:
                writer.writerow(header)
            writer.writerows(rows)
        else:
            fh.write(json.dumps(payload) + "\n")


def _coords(points) -> list[list[float]]:
    return [[float(v) for v in p] for p in np.atleast_2d(points)]


def cmd_median(args) -> int:
    X = _load(args)
    result = tukey_median(X, _aug(args))
    members = result.member_points()
    payload = {
        "depth": result.deepest.level.label,
        "n": X.n_original,
        "n_total": result.data.n_total,
        "k_iterations": result.k_iterations,
        "n_levels": len(result.levels),
        "member_ids": list(result.deepest.members),
        "members": _coords(members),
    }
    header = ["depth"] + [f"x{i + 1}" for i in range(X.d)]
    rows = [[payload["depth"], *p] for p in payload["members"]]
    _emit(args, payload, rows, header)
    return 0


def cmd_depth(args) -> int:
    X = _load(args)
    aug = _aug(args)
    if aug.n_artificial:
        from .depth import generate_artificial_points

        X = X.augmented(
            generate_artificial_points(
                X, aug.n_artificial, aug.inflate, aug.seed, domain=aug.domain,
                far_inflate=aug.far_inflate,
            )
        )
    index = index_for(X, threads=args.threads)
    if args.point is not None:
        try:
            q = [float(v) for v in args.point.split(",")]
        except ValueError:
            raise DataError(f"cannot parse point {args.point!r}") from None
        res = external_point_depth(index, X, q)
    elif args.index is not None:
        res = sample_point_depth(index, X, args.index)
    else:
        depths = sample_depths(index, X)
        labels = [f"{int(d * X.n_original)}/{X.n_original}" for d in depths]
        _emit(args, {"depths": labels}, [[lab] for lab in labels], ["depth"])
        return 0
    payload = {
        "depth": res.label,
        "k_iterations": res.k_iterations,
        "mode": res.mode,
        "n_balls": res.n_balls_used,
    }
    _emit(args, payload, [[res.label, res.k_iterations, res.mode]], ["depth", "k", "mode"])
    return 0


def cmd_contours(args) -> int:
    X = _load(args)
    if X.d != 2:
        raise UnsupportedDimensionError("contours require d=2")
    levels = contour_levels(X, _aug(args))
    contours = contours_from_level_sets(levels.levels, levels.data)
    payload = contours.to_json()
    rows = [
        [entry["alpha"], i, x, y]
        for entry in payload
        for i, (x, y) in enumerate(entry["vertices"])
    ]
    _emit(args, payload, rows, ["alpha", "vertex", "x", "y"])
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(render_svg(X, contours))
    return 0


def cmd_generate(args) -> int:
    params = {}
    if args.kind == "ring":
        params = {"r1": args.r1, "r2": args.r2}
    elif args.kind == "uniform_box":
        params = {"lo": args.lo, "hi": args.hi}
    X = generate(GeneratorSpec(args.kind, args.n, args.d, params, _seed(args)))
    with _sink(args.out) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        for row in X.values:
            writer.writerow([repr(float(v)) for v in row])
    return 0


def cmd_accuracy(args) -> int:
    X = _load(args)
    if X.d > 2:
        raise UnsupportedDimensionError("accuracy requires d <= 2")
    aug = _aug(args)
    XA = X
    if aug.n_artificial:
        from .depth import generate_artificial_points

        XA = X.augmented(
            generate_artificial_points(
                X, aug.n_artificial, aug.inflate, aug.seed, domain=aug.domain,
                far_inflate=aug.far_inflate,
            )
        )
    approx = sample_depths(index_for(XA, threads=args.threads), XA)
    report = accuracy_report(X, approx)
    payload = report.to_json()
    _emit(args, payload, [list(payload.values())], list(payload.keys()))
    return 0


def cmd_bench(args) -> int:
    grid = [int(v) for v in args.grid.split(",")]
    records, summary = bench_mod.bench_scaling(
        args.mode, grid, args.fixed, args.repetitions, _seed(args), args.threads
    )
    if args.out:
        with open(args.out, "w", newline="") as fh:
            bench_mod.write_records(records, fh)
    else:
        buf = io.StringIO()
        bench_mod.write_records(records, buf)
        sys.stderr.write(buf.getvalue())
    print(json.dumps(summary))
    return 0


def render_svg(X: DataMatrix, contours, size: int = 600) -> str:
    """Scatter of the sample with contour polygons; no external assets."""
    pts = X.original
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    span = float(max(hi - lo)) or 1.0
    pad = 0.05 * span

    def tx(p):
        x = (p[0] - lo[0] + pad) / (span + 2 * pad) * size
        y = size - (p[1] - lo[1] + pad) / (span + 2 * pad) * size
        return f"{x:.2f},{y:.2f}"

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}">']
    for p in pts:
        x, y = tx(p).split(",")
        parts.append(f'<circle cx="{x}" cy="{y}" r="2" fill="#c0392b"/>')
    for entry in contours:
        poly = " ".join(tx(v) for v in entry.polygon)
        parts.append(f'<polygon points="{poly}" fill="none" stroke="#2c3e50" stroke-width="1"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="CSV file, one point per row")
    common.add_argument("--header", action="store_true", help="skip the first line")
    common.add_argument("--artificial", type=int, default=0, metavar="N")
    common.add_argument("--seed", type=int, default=None, help="default: $ABCDEPTH_SEED or 0")
    common.add_argument("--inflate", type=float, default=1.2, metavar="G")
    common.add_argument("--domain", choices=("mixed", "box", "hull"), default="mixed")
    common.add_argument("--far-inflate", type=float, default=100.0)
    common.add_argument("--l", type=int, default=4, metavar="L")
    common.add_argument("--p", type=int, default=200, metavar="P")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", metavar="FILE")
    common.add_argument("--threads", type=int, default=1)

    parser = argparse.ArgumentParser(prog="abcdepth", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("median", parents=[common], help="deepest level set")

    p = sub.add_parser("depth", parents=[common], help="depth of a point")
    which = p.add_mutually_exclusive_group()
    which.add_argument("--point", help="comma-separated coordinates")
    which.add_argument("--index", type=int, help="0-based row of the sample")

    p = sub.add_parser("contours", parents=[common], help="depth contours (d=2)")
    p.add_argument("--svg", metavar="FILE")

    p = sub.add_parser("generate", parents=[common], help="synthetic CSV data")
    p.add_argument("--kind", choices=KINDS, default="gaussian")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--r1", type=float, default=1.0)
    p.add_argument("--r2", type=float, default=2.0)
    p.add_argument("--lo", type=float, default=-1.0)
    p.add_argument("--hi", type=float, default=1.0)

    sub.add_parser("accuracy", parents=[common], help="per-point accuracy vs exact depth")

    p = sub.add_parser("bench", parents=[common], help="scaling benchmark")
    p.add_argument("--mode", choices=("n_scaling", "d_scaling"), default="n_scaling")
    p.add_argument("--grid", default="250,500,1000,2000")
    p.add_argument("--fixed", type=int, default=50, help="d for n_scaling, n for d_scaling")
    p.add_argument("--repetitions", type=int, default=3)
    return parser


COMMANDS = {
    "median": cmd_median,
    "depth": cmd_depth,
    "contours": cmd_contours,
    "generate": cmd_generate,
    "accuracy": cmd_accuracy,
    "bench": cmd_bench,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "bench" and args.repetitions < 3:
        parser.print_usage(sys.stderr)
        sys.stderr.write("abcdepth: error: bench needs --repetitions >= 3\n")
        return 2
    try:
        return COMMANDS[args.command](args)
    except (DataError, UnsupportedDimensionError, ValueError, IndexError, OSError) as exc:
        sys.stderr.write(f"abcdepth: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
