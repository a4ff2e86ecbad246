from __future__ import annotations

import logging
import math
from typing import Iterable, List, Optional, Tuple

import numpy as np

from ..config import get_settings
from ..errors import InstanceTooLarge, NotApplicable, WrongDimension
from ..models import AppendixReport, BoundReport, HermitianMatrix, OracleResult, TWO_PI, UnimodularVector
from .hermitian import eigen_decompose, m_dominance, quadratic_form
from .solvers import random_vector
from .transform import build_rbar, theorem1_condition


log = logging.getLogger("uqpkit.bounds")
settings = get_settings()

GREEDY_RATIO = 1.0 - 1.0 / math.e
_BLOCK = 1 << 15


def prop2_ratio(n: int) -> float:
    return 1.0 - 1.0 / math.e + 1.0 / (math.e * (2 * n + 1))


def universal_ratio(n: int) -> float:
    return (2 * n - 1) / (2 * n + 1)


def _prop1_ratio(lam_min: float, lam_max: float, n: int) -> float:
    if lam_max == lam_min:
        return 1.0
    if lam_max <= 0.0:
        return 0.0
    return max(0.0, (lam_max + (n - 1) * lam_min) / (lam_max * n))


def compute_bounds(R: HermitianMatrix) -> BoundReport:
    ed = eigen_decompose(R)
    n = R.n
    thm1 = theorem1_condition(R)
    prop2 = m_dominance(R, 2 * n)
    return BoundReport(
        n=n,
        spectral_lo=ed.smallest * n,
        spectral_hi=ed.largest * n,
        prop1_ratio=_prop1_ratio(ed.smallest, ed.largest, n),
        thm1_applicable=thm1,
        thm1_ratio=GREEDY_RATIO if thm1 else 0.0,
        prop2_applicable=prop2,
        prop2_ratio=prop2_ratio(n) if prop2 else 0.0,
        universal_ratio=universal_ratio(n) if prop2 else 0.0,
    )


def bound_curve(sizes: Iterable[int]) -> List[Tuple[int, float, float, float]]:
    """Guarantee levels for 2N-dominant matrices as N grows."""

    return [(n, GREEDY_RATIO, prop2_ratio(n), universal_ratio(n)) for n in sizes]


def grid_oracle(R: HermitianMatrix, M: Optional[int] = None) -> OracleResult:
    """Exhaustive search over s(1) = 1, s(i) ∈ {e^{j2πk/M}}.

    Candidates are enumerated in lexicographic order of (k_2, …, k_N); the first
    maximizer in that order wins, so the result does not depend on block size.
    """

    M = settings.oracle_grid_points if M is None else M
    n = R.n
    free = n - 1
    if M < 1 or n > settings.oracle_max_dimension or M**free > settings.oracle_max_candidates:
        raise InstanceTooLarge(
            f"Grid oracle limited to N <= {settings.oracle_max_dimension} and "
            f"M^(N-1) <= {settings.oracle_max_candidates}, got N={n}, M={M}"
        )

    grid = TWO_PI * np.arange(M) / M
    total = M**free
    weights = M ** np.arange(free - 1, -1, -1, dtype=np.int64)
    transposed = R.entries.T

    best_value = -np.inf
    best_index = 0
    for start in range(0, total, _BLOCK):
        indices = np.arange(start, min(start + _BLOCK, total), dtype=np.int64)
        digits = (indices[:, None] // weights[None, :]) % M
        phases = np.zeros((indices.size, n))
        phases[:, 1:] = grid[digits]
        vectors = np.exp(1j * phases)
        values = np.einsum("bi,bi->b", vectors.conj(), vectors @ transposed).real
        local = int(np.argmax(values))
        if values[local] > best_value:
            best_value, best_index = float(values[local]), int(indices[local])

    digits = (best_index // weights) % M if free else np.zeros(0, dtype=np.int64)
    phases = np.concatenate([[0.0], grid[digits]])
    argmax = UnimodularVector(phases)
    return OracleResult(
        value=quadratic_form(R, argmax),
        argmax=argmax,
        grid_points_per_phase=M,
        exhaustive=True,
    )


def exact_optimum_n2(R: HermitianMatrix) -> float:
    if R.n != 2:
        raise WrongDimension(f"Closed form needs N = 2, got N = {R.n}")
    diag = R.diagonal
    return float(diag[0] + diag[1] + 2.0 * abs(R.entries[0, 1]))


def appendix_inequalities(R: HermitianMatrix, M: Optional[int] = None) -> AppendixReport:
    n = R.n
    if not m_dominance(R, 2 * n):
        return AppendixReport(applicable=False)

    transform = build_rbar(R)
    trace_r, trace_rbar = transform.trace_r, transform.trace_rbar
    delta_sum = float(transform.deltas[1:].sum())
    slack = 1e-9 * max(1.0, abs(trace_r))

    oracle_value: Optional[float] = None
    if n <= 6:
        oracle_value = grid_oracle(R, M).value

    clauses = {
        "delta_sum": delta_sum <= trace_r / (4 * n) + slack,
        "trace": trace_rbar <= trace_r + slack,
        "optimum_cap": None if oracle_value is None else oracle_value <= (1 + 1 / (2 * n)) * trace_r + slack,
        "trace_gap": None if oracle_value is None else trace_r - trace_rbar >= oracle_value / (2 * n + 1) - slack,
    }
    report = AppendixReport(
        applicable=True,
        delta_sum=delta_sum,
        trace_r=trace_r,
        trace_rbar=trace_rbar,
        oracle_value=oracle_value,
        clauses=clauses,
    )
    if not report.all_hold:
        log.warning("Appendix inequalities violated: %s", clauses)
    return report


def universal_floor_check(R: HermitianMatrix, samples: int, seed: int, M: Optional[int] = None) -> bool:
    n = R.n
    if not m_dominance(R, 2 * n):
        raise NotApplicable("Universal floor needs a 2N-dominant matrix")
    if n > 6:
        raise InstanceTooLarge(f"Universal floor check limited to N <= 6, got N={n}")
    floor = universal_ratio(n) * grid_oracle(R, M).value
    slack = 1e-9 * max(1.0, abs(floor))
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        sample = random_vector(n, int(rng.integers(0, 2**63 - 1)))
        if quadratic_form(R, sample) < floor - slack:
            return False
    return True
