from __future__ import annotations

import argparse
import logging

from .. import texts
from ..services.bounds import grid_oracle
from ..utils.matrix_io import format_float, read_matrix
from .common import Command, join_floats, positive_int, write_json


log = logging.getLogger("uqpkit.cli")


def configure(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--matrix", required=True, help="Matrix file.")
    parser.add_argument("--grid", type=positive_int, default=None, help="Grid points per phase (default 16).")


def handle(args: argparse.Namespace) -> int:
    R = read_matrix(args.matrix)
    result = grid_oracle(R, args.grid)
    print(
        texts.ORACLE_LINES.format(
            value=format_float(result.value),
            grid=result.grid_points_per_phase,
            phases=join_floats(result.argmax.phases),
        )
    )
    if args.out is not None:
        path = write_json(
            args.out,
            {
                "value": result.value,
                "grid_points_per_phase": result.grid_points_per_phase,
                "argmax": [float(phase) for phase in result.argmax.phases],
            },
        )
        log.info("Oracle result written to %s", path)
    return 0


command = Command(name="oracle", help="Exhaustive grid oracle for small N.", configure=configure, handler=handle)
