from __future__ import annotations

from typing import Optional, Tuple

import numpy as np

from ..errors import DimensionMismatch, IndexOutOfRange
from ..models import CodeString, HermitianMatrix, TransformResult, UnimodularVector


def compute_deltas(R: HermitianMatrix) -> np.ndarray:
    """δ_k = Σ_{i<k} |r_ki|, read along rows of the strictly lower triangle."""

    return np.abs(np.tril(R.entries, -1)).sum(axis=1)


def _tail_sums(deltas: np.ndarray) -> np.ndarray:
    # tails[k] = Σ_{i>k} δ_i
    deltas = np.asarray(deltas, dtype=np.float64)
    tails = np.zeros_like(deltas)
    if deltas.size > 1:
        tails[:-1] = np.cumsum(deltas[::-1])[::-1][1:]
    return tails


def compute_loads(deltas) -> np.ndarray:
    deltas = np.asarray(deltas, dtype=np.float64)
    return 2.0 * deltas + 4.0 * _tail_sums(deltas)


def build_rbar(R: HermitianMatrix) -> TransformResult:
    deltas = compute_deltas(R)
    loads = compute_loads(deltas)
    rbar = R.to_array()
    np.fill_diagonal(rbar, loads)
    return TransformResult(
        deltas=deltas,
        loads=loads,
        rbar=HermitianMatrix(rbar),
        trace_r=R.trace,
        trace_rbar=float(loads.sum()),
    )


def remark1_trace(deltas) -> float:
    deltas = np.asarray(deltas, dtype=np.float64)
    k = np.arange(1, deltas.size + 1)
    return float(((4 * k - 2) * deltas)[1:].sum())


def theorem1_condition(R: HermitianMatrix, transform: Optional[TransformResult] = None) -> bool:
    transform = transform or build_rbar(R)
    slack = 1e-12 * max(1.0, abs(transform.trace_r))
    return transform.trace_rbar <= transform.trace_r + slack


def string_objective(
    R: HermitianMatrix,
    A: CodeString,
    transform: Optional[TransformResult] = None,
) -> float:
    k = len(A)
    if not 1 <= k <= R.n:
        raise DimensionMismatch(f"String length {k} outside [1, {R.n}]")
    transform = transform or build_rbar(R)
    values = A.values
    block = transform.rbar.entries[:k, :k]
    return float(np.vdot(values, block @ values).real)


def string_greedy_value(R: HermitianMatrix, solution: UnimodularVector) -> Tuple[float, float]:
    """F(g) and g^H R g + Tr(R̄) - Tr(R) for a full-length solution; the two agree."""

    transform = build_rbar(R)
    f_value = string_objective(R, CodeString(solution.phases), transform)
    values = solution.values
    form = float(np.vdot(values, R.entries @ values).real)
    return f_value, form + transform.trace_rbar - transform.trace_r


def lemma1_interval(R: HermitianMatrix, k: int, l: int) -> Tuple[float, float]:
    if not 1 <= k <= l <= R.n:
        raise IndexOutOfRange(f"Need 1 <= k <= l <= {R.n}, got k={k}, l={l}")
    deltas = compute_deltas(R)
    tails = _tail_sums(deltas)
    # 1-based i in k+1..l is 0-based k..l-1
    lo = 4.0 * float(tails[k:l].sum())
    hi = 4.0 * float((deltas[k:l] + tails[k:l]).sum())
    return lo, hi
