from __future__ import annotations

import argparse
import dataclasses
import logging
from pathlib import Path

from .. import texts
from ..errors import ValidationError
from ..services.experiments import emit_cdf, load_config, run_experiment, summarize
from ..utils.records import emit_csv, write_cdf
from .common import Command, positive_int


log = logging.getLogger("uqpkit.cli")


def configure(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--workers", type=positive_int, default=None, help="Worker processes (default UQP_WORKERS).")
    parser.add_argument("--cdf-dir", default=None, help="Directory for per-(method, N) CDF files.")


def handle(args: argparse.Namespace) -> int:
    if args.config is None:
        raise ValidationError("bench needs --config")
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg = dataclasses.replace(cfg, seed=args.seed)

    records = run_experiment(cfg, workers=args.workers)
    out = Path(args.out or "results.csv")
    emit_csv(records, out)
    log.info("Wrote %d records to %s", len(records), out)
    print(texts.FILE_WRITTEN.format(path=out))

    if args.cdf_dir is not None:
        cdf_dir = Path(args.cdf_dir)
        cdf_dir.mkdir(parents=True, exist_ok=True)
        for method in cfg.methods:
            for n in cfg.sizes:
                path = write_cdf(emit_cdf(records, method, n), cdf_dir / f"cdf_{method.value}_n{n}.csv")
                log.info("CDF written to %s", path)

    print(texts.BENCH_SUMMARY_HEADER)
    for row in summarize(records):
        print(texts.BENCH_SUMMARY_ROW.format(n=row["n"], method=row["method"].value, count=row["count"], mean=row["mean"], min=row["min"]))
    return 0


command = Command(name="bench", help="Run an experiment config and write CSV.", configure=configure, handler=handle)
