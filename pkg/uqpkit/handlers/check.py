from __future__ import annotations

import argparse
import logging
from typing import List, Tuple

from .. import texts
from ..errors import ValidationError
from ..config import get_settings
from ..models import HermitianMatrix
from ..services.checks import run_invariant_suite
from ..services.experiments import generate_matrix, load_config
from ..utils.matrix_io import read_matrix
from ..utils.seeds import derive_seed
from .common import Command, positive_int, write_json


log = logging.getLogger("uqpkit.cli")
settings = get_settings()


def configure(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--matrix", default=None, help="Matrix file; otherwise a batch from --config.")
    parser.add_argument("--grid", type=positive_int, default=None, help="Oracle grid points per phase.")
    parser.add_argument("--samples", type=positive_int, default=100, help="Random vectors for the universal floor.")
    parser.add_argument("--draws", type=positive_int, default=200, help="String-property draws.")


def _batch(args: argparse.Namespace) -> List[Tuple[int, HermitianMatrix]]:
    if args.matrix is not None:
        return [(args.seed or 0, read_matrix(args.matrix))]
    if args.config is None:
        raise ValidationError("check needs --matrix or --config")
    cfg = load_config(args.config)
    master = cfg.seed if args.seed is None else args.seed
    batch = []
    for n in cfg.sizes:
        for index in range(cfg.matrices_per_size):
            matrix_seed = derive_seed(master, n, index)
            batch.append((matrix_seed, generate_matrix(cfg, n, matrix_seed)))
    return batch


def handle(args: argparse.Namespace) -> int:
    grid = args.grid if args.grid is not None else settings.oracle_grid_points
    failed = 0
    payload = []
    for index, (seed, R) in enumerate(_batch(args)):
        report = run_invariant_suite(R, seed=seed, grid_points=grid, samples=args.samples, draws=args.draws)
        failures = report.failures
        failed += len(failures)
        print(texts.CHECK_SUMMARY.format(index=index, n=report.n, total=len(report.results), failed=len(failures)))
        for failure in failures:
            print(texts.CHECK_FAILURE.format(name=failure.name, detail=failure.detail))
        payload.append(
            {
                "n": report.n,
                "seed": seed,
                "results": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in report.results],
            }
        )

    if args.out is not None:
        path = write_json(args.out, payload)
        log.info("Check results written to %s", path)
    if failed:
        print(texts.CHECK_HAS_FAILURES.format(failed=failed))
        return 1
    print(texts.CHECK_ALL_OK)
    return 0


command = Command(name="check", help="Invariant and bound suite.", configure=configure, handler=handle)
