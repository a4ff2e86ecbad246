from __future__ import annotations

import argparse
import dataclasses

from .. import texts
from ..services.bounds import bound_curve, compute_bounds
from ..utils.matrix_io import format_float, read_matrix
from .common import Command, flag, write_json


def _sizes(raw: str) -> list[int]:
    try:
        sizes = [int(part) for part in raw.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated sizes: {raw!r}") from exc
    if not sizes or min(sizes) < 1:
        raise argparse.ArgumentTypeError(f"sizes must be >= 1: {raw!r}")
    return sizes


def configure(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--matrix", help="Matrix file.")
    source.add_argument("--curve", type=_sizes, help="Comma-separated N values for the 2N-dominant table.")


def handle(args: argparse.Namespace) -> int:
    if args.curve is not None:
        rows = bound_curve(args.curve)
        print(texts.CURVE_HEADER)
        for n, greedy, prop2, universal in rows:
            print(f"{n}\t{greedy:.6f}\t{prop2:.6f}\t{universal:.6f}")
        if args.out is not None:
            write_json(args.out, [{"n": n, "greedy": g, "prop2": p, "universal": u} for n, g, p, u in rows])
        return 0

    report = compute_bounds(read_matrix(args.matrix))
    print(
        texts.BOUNDS_LINES.format(
            spectral_lo=format_float(report.spectral_lo),
            spectral_hi=format_float(report.spectral_hi),
            prop1_ratio=format_float(report.prop1_ratio),
            thm1=flag(report.thm1_applicable),
            prop2=flag(report.prop2_applicable),
            prop2_ratio=format_float(report.prop2_ratio),
            universal_ratio=format_float(report.universal_ratio),
        )
    )
    if args.out is not None:
        write_json(args.out, dataclasses.asdict(report))
    return 0


command = Command(name="bounds", help="Performance bounds for a matrix or a table over N.", configure=configure, handler=handle)
