from __future__ import annotations

import json
import logging
import math
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import fields
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..config import get_settings
from ..errors import ConfigError, NoMatchingRecords, ValidationError
from ..models import ExperimentConfig, ExperimentRecord, GeneratorKind, HermitianMatrix, Method
from ..utils.seeds import derive_seed
from .bounds import compute_bounds, grid_oracle
from .hermitian import random_dominant, random_psd
from .solvers import solve


log = logging.getLogger("uqpkit.experiments")
settings = get_settings()

GENERATOR_RX = re.compile(r"^\s*dominant\s*\(\s*([0-9]*\.?[0-9]+|2n)\s*\)\s*$", re.IGNORECASE)
CONFIG_FIELDS = {item.name for item in fields(ExperimentConfig)}
REQUIRED_FIELDS = {"sizes", "matrices_per_size", "seed", "methods"}


def _int(value: Any, name: str, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ConfigError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return value


def _parse_generator(raw: Any, factor: Any) -> Tuple[GeneratorKind, Optional[float]]:
    if not isinstance(raw, str):
        raise ConfigError(f"generator must be a string, got {raw!r}")
    match = GENERATOR_RX.match(raw)
    if match:
        token = match.group(1).lower()
        return GeneratorKind.DOMINANT, None if token == "2n" else float(token)
    try:
        kind = GeneratorKind(raw.strip().lower())
    except ValueError as exc:
        raise ConfigError(f"Unknown generator: {raw!r}") from exc
    if factor is not None:
        if isinstance(factor, bool) or not isinstance(factor, (int, float)) or factor <= 0:
            raise ConfigError(f"dominance_factor must be positive, got {factor!r}")
        factor = float(factor)
    return kind, factor


def parse_config(data: Mapping[str, Any]) -> ExperimentConfig:
    if not isinstance(data, Mapping):
        raise ConfigError("Experiment config must be an object")
    unknown = set(data) - CONFIG_FIELDS
    if unknown:
        raise ConfigError(f"Unknown config keys: {', '.join(sorted(unknown))}")
    missing = REQUIRED_FIELDS - set(data)
    if missing:
        raise ConfigError(f"Missing config keys: {', '.join(sorted(missing))}")

    sizes = data["sizes"]
    if not isinstance(sizes, list) or not sizes:
        raise ConfigError("sizes must be a non-empty list")
    sizes = tuple(_int(size, "sizes[]", 1) for size in sizes)

    raw_methods = data["methods"]
    if not isinstance(raw_methods, list) or not raw_methods:
        raise ConfigError("methods must be a non-empty list")
    try:
        methods = tuple(dict.fromkeys(Method.parse(str(item)) for item in raw_methods))
    except ValidationError as exc:
        raise ConfigError(str(exc)) from exc

    generator, factor = _parse_generator(data.get("generator", "psd"), data.get("dominance_factor"))
    oracle_enabled = data.get("oracle_enabled", False)
    if not isinstance(oracle_enabled, bool):
        raise ConfigError("oracle_enabled must be true or false")
    oracle_m = _int(data.get("oracle_M", settings.oracle_grid_points), "oracle_M", 1)
    if oracle_enabled:
        largest = max(sizes)
        if largest > settings.oracle_max_dimension or oracle_m ** (largest - 1) > settings.oracle_max_candidates:
            raise ConfigError(
                f"Oracle only permitted for sizes <= {settings.oracle_max_dimension} "
                f"and M^(N-1) <= {settings.oracle_max_candidates}"
            )

    eig_hi = data.get("eig_hi", 1000.0)
    if isinstance(eig_hi, bool) or not isinstance(eig_hi, (int, float)) or eig_hi <= 0:
        raise ConfigError(f"eig_hi must be positive, got {eig_hi!r}")
    power_tol = data.get("power_tol", settings.power_tol)
    if isinstance(power_tol, bool) or not isinstance(power_tol, (int, float)) or power_tol < 0:
        raise ConfigError(f"power_tol must be non-negative, got {power_tol!r}")

    return ExperimentConfig(
        sizes=sizes,
        matrices_per_size=_int(data["matrices_per_size"], "matrices_per_size", 1),
        seed=_int(data["seed"], "seed", 0),
        methods=methods,
        oracle_enabled=oracle_enabled,
        oracle_M=oracle_m,
        generator=generator,
        dominance_factor=factor,
        eig_hi=float(eig_hi),
        power_max_iters=_int(data.get("power_max_iters", settings.power_max_iters), "power_max_iters", 1),
        power_tol=float(power_tol),
    )


def load_config(path: str | Path) -> ExperimentConfig:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"Config {path} is not valid JSON: {exc}") from exc
    return parse_config(data)


def generate_matrix(cfg: ExperimentConfig, n: int, matrix_seed: int) -> HermitianMatrix:
    if cfg.generator is GeneratorKind.DOMINANT:
        factor = cfg.dominance_factor if cfg.dominance_factor is not None else 2.0 * n
        return random_dominant(n, matrix_seed, factor)
    return random_psd(n, matrix_seed, cfg.eig_hi)


def _run_instance(cfg: ExperimentConfig, n: int, index: int) -> List[ExperimentRecord]:
    matrix_seed = derive_seed(cfg.seed, n, index)
    R = generate_matrix(cfg, n, matrix_seed)
    bounds = compute_bounds(R)
    oracle_value = grid_oracle(R, cfg.oracle_M).value if cfg.oracle_enabled else None

    records = []
    for method in cfg.methods:
        started = time.perf_counter_ns()
        report = solve(
            R,
            method,
            seed=matrix_seed,
            max_iters=cfg.power_max_iters,
            tol=cfg.power_tol,
        )
        elapsed = max(1, (time.perf_counter_ns() - started) // 1000)
        normalized = report.value / bounds.spectral_hi if bounds.spectral_hi > 0 else math.nan
        records.append(
            ExperimentRecord(
                n=n,
                matrix_seed=matrix_seed,
                method=method,
                value=report.value,
                normalized_value=normalized,
                bounds=bounds,
                runtime_micros=int(elapsed),
                oracle_value=oracle_value,
            )
        )
    log.debug("Instance n=%d index=%d seed=%d done", n, index, matrix_seed)
    return records


def _run_instance_args(args: Tuple[ExperimentConfig, int, int]) -> List[ExperimentRecord]:
    return _run_instance(*args)


def run_experiment(cfg: ExperimentConfig, *, workers: Optional[int] = None) -> List[ExperimentRecord]:
    workers = settings.workers if workers is None else max(1, workers)
    tasks = [(cfg, n, index) for n in cfg.sizes for index in range(cfg.matrices_per_size)]
    log.info(
        "Running %d instances x %d methods on %d worker(s)",
        len(tasks),
        len(cfg.methods),
        workers,
    )

    if workers == 1 or len(tasks) == 1:
        batches = [_run_instance_args(task) for task in tasks]
    else:
        chunk = max(1, len(tasks) // (workers * 4))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(_run_instance_args, tasks, chunksize=chunk))

    records = [record for batch in batches for record in batch]
    records.sort(key=lambda record: record.sort_key)
    log.info("Experiment produced %d records", len(records))
    return records


def emit_cdf(records: Sequence[ExperimentRecord], method: Method, n: int) -> List[Tuple[float, float]]:
    values = sorted(record.normalized_value for record in records if record.method is method and record.n == n)
    if not values:
        raise NoMatchingRecords(f"No records for method {method.value} at n={n}")
    count = len(values)
    return [(value, (k + 1) / count) for k, value in enumerate(values)]


def summarize(records: Sequence[ExperimentRecord]) -> List[Dict[str, Any]]:
    groups: Dict[Tuple[int, Method], List[float]] = {}
    for record in records:
        groups.setdefault((record.n, record.method), []).append(record.normalized_value)
    summary = []
    for (n, method), values in sorted(groups.items(), key=lambda item: (item[0][0], item[0][1].order)):
        array = np.asarray(values)
        summary.append(
            {
                "n": n,
                "method": method,
                "count": len(values),
                "mean": float(array.mean()),
                "min": float(array.min()),
            }
        )
    return summary
