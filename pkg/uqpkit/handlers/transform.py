from __future__ import annotations

import argparse
import logging

from .. import texts
from ..services.transform import build_rbar, theorem1_condition
from ..utils.matrix_io import format_float, read_matrix, write_transform
from .common import Command, flag, join_floats


log = logging.getLogger("uqpkit.cli")


def configure(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--matrix", required=True, help="Matrix file.")


def handle(args: argparse.Namespace) -> int:
    R = read_matrix(args.matrix)
    result = build_rbar(R)
    condition = theorem1_condition(R, result)
    print(
        texts.TRANSFORM_LINES.format(
            deltas=join_floats(result.deltas),
            loads=join_floats(result.loads),
            trace_r=format_float(result.trace_r),
            trace_rbar=format_float(result.trace_rbar),
            condition=flag(condition),
        )
    )
    if args.out is not None:
        path = write_transform(result, args.out, theorem1=condition)
        log.info("Transformed matrix written to %s", path)
        print(texts.FILE_WRITTEN.format(path=path))
    return 0


command = Command(name="transform", help="Build R̄ and test the trace condition.", configure=configure, handler=handle)
