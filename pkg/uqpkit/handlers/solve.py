from __future__ import annotations

import argparse
import logging

from .. import texts
from ..models import Method, SolverReport
from ..services.hermitian import eigen_decompose
from ..services.solvers import solve
from ..utils.matrix_io import format_float, read_matrix
from .common import Command, join_floats, positive_int, write_json


log = logging.getLogger("uqpkit.cli")


def configure(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--matrix", required=True, help="Matrix file.")
    parser.add_argument("--method", type=Method.parse, default=Method.GREEDY, help="d, greedy, row-swap-greedy, power, random.")
    parser.add_argument("--max-iters", type=positive_int, default=None, help="Power-method iteration cap.")
    parser.add_argument("--tol", type=float, default=None, help="Power-method tolerance.")


def render_report(report: SolverReport, normalized: float) -> str:
    lines = [
        texts.REPORT_LINES.format(
            method=report.method.value,
            value=format_float(report.value),
            normalized=format_float(normalized),
            iterations=report.iterations,
        )
    ]
    if report.method is Method.ROW_SWAP_GREEDY:
        swap = report.chosen_swap
        lines.append(texts.NO_SWAP_LINE if swap is None else texts.SWAP_LINE.format(m=swap.m, n=swap.n))
    lines.append(texts.PHASES_LINE.format(phases=join_floats(report.solution.phases)))
    return "\n".join(lines)


def handle(args: argparse.Namespace) -> int:
    R = read_matrix(args.matrix)
    report = solve(R, args.method, seed=args.seed or 0, max_iters=args.max_iters, tol=args.tol)
    spectral_hi = eigen_decompose(R).largest * R.n
    normalized = report.value / spectral_hi if spectral_hi > 0 else float("nan")
    print(render_report(report, normalized))

    if args.out is not None:
        payload = {
            "method": report.method.value,
            "value": report.value,
            "normalized_value": normalized,
            "iterations": report.iterations,
            "phases": [float(phase) for phase in report.solution.phases],
            "chosen_swap": None if report.chosen_swap is None else [report.chosen_swap.m, report.chosen_swap.n],
            "trace": None if report.trace is None else list(report.trace),
        }
        path = write_json(args.out, payload)
        log.info("Solver report written to %s", path)
    return 0


command = Command(name="solve", help="Run one heuristic on a matrix file.", configure=configure, handler=handle)
