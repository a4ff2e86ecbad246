from __future__ import annotations

import csv
from pathlib import Path
from typing import Dict, Iterable, List, Sequence, Tuple

from ..errors import ValidationError
from ..models import ExperimentRecord
from .matrix_io import format_float

CSV_HEADER = (
    "n",
    "matrix_seed",
    "method",
    "value",
    "normalized_value",
    "spectral_hi",
    "prop1_ratio",
    "thm1_applicable",
    "prop2_applicable",
    "runtime_micros",
)
CDF_HEADER = ("normalized_value", "cumulative_fraction")


def _flag(value: bool) -> str:
    return "true" if value else "false"


def record_row(record: ExperimentRecord) -> List[str]:
    return [
        str(record.n),
        str(record.matrix_seed),
        record.method.value,
        format_float(record.value),
        format_float(record.normalized_value),
        format_float(record.bounds.spectral_hi),
        format_float(record.bounds.prop1_ratio),
        _flag(record.bounds.thm1_applicable),
        _flag(record.bounds.prop2_applicable),
        str(record.runtime_micros),
    ]


def emit_csv(records: Sequence[ExperimentRecord], path: str | Path) -> Path:
    if not records:
        raise ValidationError("No records to write")
    target = Path(path)
    with target.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for record in records:
            writer.writerow(record_row(record))
    return target


def load_records_csv(path: str | Path) -> List[Dict[str, str]]:
    with Path(path).open("r", encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle)
        if tuple(reader.fieldnames or ()) != CSV_HEADER:
            raise ValidationError(f"Unexpected CSV header: {reader.fieldnames}")
        return list(reader)


def write_cdf(points: Iterable[Tuple[float, float]], path: str | Path) -> Path:
    target = Path(path)
    with target.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(CDF_HEADER)
        for value, fraction in points:
            writer.writerow([format_float(value), format_float(fraction)])
    return target
