from __future__ import annotations

from pathlib import Path
from typing import List

import numpy as np

from ..errors import MatrixFormatError
from ..models import HermitianMatrix, TransformResult
from ..services.hermitian import make_hermitian

FLOAT_FMT = ".17g"
COMMENT_PREFIX = "#"


def format_float(value: float) -> str:
    return format(float(value), FLOAT_FMT)


def format_matrix(R: HermitianMatrix) -> str:
    lines = [str(R.n)]
    for row in R.entries:
        parts = []
        for entry in row:
            parts.append(format_float(entry.real))
            parts.append(format_float(entry.imag))
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> HermitianMatrix:
    lines: List[str] = [
        line.strip() for line in text.splitlines() if line.strip() and not line.lstrip().startswith(COMMENT_PREFIX)
    ]
    if not lines:
        raise MatrixFormatError("Matrix file is empty")
    try:
        n = int(lines[0])
    except ValueError as exc:
        raise MatrixFormatError(f"First line must be the dimension N, got {lines[0]!r}") from exc
    if n < 1:
        raise MatrixFormatError(f"Dimension must be >= 1, got {n}")
    rows = lines[1:]
    if len(rows) != n:
        raise MatrixFormatError(f"Expected {n} rows, found {len(rows)}")

    entries = np.empty((n, n), dtype=np.complex128)
    for i, row in enumerate(rows):
        fields = row.split()
        if len(fields) != 2 * n:
            raise MatrixFormatError(f"Row {i + 1} has {len(fields)} numbers, expected {2 * n}")
        try:
            numbers = np.array([float(field) for field in fields])
        except ValueError as exc:
            raise MatrixFormatError(f"Row {i + 1} contains a non-numeric field") from exc
        entries[i] = numbers[0::2] + 1j * numbers[1::2]
    return make_hermitian(entries)


def write_matrix(R: HermitianMatrix, path: str | Path) -> Path:
    target = Path(path)
    target.write_text(format_matrix(R), encoding="utf-8", newline="\n")
    return target


def read_matrix(path: str | Path) -> HermitianMatrix:
    return parse_matrix(Path(path).read_text(encoding="utf-8"))


def write_transform(result: TransformResult, path: str | Path, *, theorem1: bool) -> Path:
    summary = (
        f"{COMMENT_PREFIX} trace_r={format_float(result.trace_r)} "
        f"trace_rbar={format_float(result.trace_rbar)} theorem1={'true' if theorem1 else 'false'}\n"
    )
    target = Path(path)
    target.write_text(format_matrix(result.rbar) + summary, encoding="utf-8", newline="\n")
    return target
