from __future__ import annotations

import argparse
import logging
import sys

from .. import texts
from ..models import GeneratorKind
from ..services.hermitian import random_dominant, random_psd
from ..utils.matrix_io import format_matrix, write_matrix
from .common import Command, positive_int


log = logging.getLogger("uqpkit.cli")


def configure(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=positive_int, required=True, help="Matrix size N.")
    parser.add_argument(
        "--generator",
        choices=[kind.value for kind in GeneratorKind],
        default=GeneratorKind.PSD.value,
    )
    parser.add_argument("--dominance", type=float, default=None, help="Dominance factor M (default 2N).")
    parser.add_argument("--eig-hi", type=float, default=1000.0, help="Upper end of the PSD eigenvalue range.")


def handle(args: argparse.Namespace) -> int:
    seed = args.seed or 0
    if args.generator == GeneratorKind.DOMINANT.value:
        factor = args.dominance if args.dominance is not None else 2.0 * args.n
        R = random_dominant(args.n, seed, factor)
    else:
        R = random_psd(args.n, seed, args.eig_hi)

    if args.out is None:
        sys.stdout.write(format_matrix(R))
        return 0
    path = write_matrix(R, args.out)
    log.info("Matrix written to %s", path)
    print(texts.MATRIX_WRITTEN.format(n=R.n, path=path))
    return 0


command = Command(name="gen", help="Generate a matrix file.", configure=configure, handler=handle)
