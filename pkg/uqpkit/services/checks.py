from __future__ import annotations

import logging
from typing import Dict, Optional

import numpy as np

from ..models import CheckReport, CodeString, HermitianMatrix, TWO_PI
from .bounds import (
    GREEDY_RATIO,
    appendix_inequalities,
    compute_bounds,
    grid_oracle,
    universal_floor_check,
)
from .hermitian import eigen_decompose
from .solvers import (
    random_vector,
    solve_dominant_matching,
    solve_greedy,
    solve_power_method,
    solve_random,
    solve_row_swap_greedy,
)
from .transform import build_rbar, lemma1_interval, remark1_trace, string_objective


log = logging.getLogger("uqpkit.checks")

ORACLE_GUARANTEE_MAX_N = 5
FLOOR_MAX_N = 6


def sample_string_properties(R: HermitianMatrix, rng: np.random.Generator, draws: int) -> Dict[str, int]:
    """Random (B ⪯ A, u) draws against monotonicity, diminishing returns and the increment interval."""

    transform = build_rbar(R)
    n = R.n
    violations = {"monotone": 0, "diminishing_returns": 0, "lemma1": 0}
    for _ in range(draws):
        l = int(rng.integers(1, n + 1))
        k = int(rng.integers(1, l + 1))
        A = CodeString(rng.uniform(0.0, TWO_PI, l))
        B = CodeString(A.phases[:k])
        f_a = string_objective(R, A, transform)
        f_b = string_objective(R, B, transform)
        lo, hi = lemma1_interval(R, k, l)
        slack = 1e-9 * max(1.0, abs(f_a), abs(hi))

        if f_a < f_b - slack:
            violations["monotone"] += 1
        if not lo - slack <= f_a - f_b <= hi + slack:
            violations["lemma1"] += 1
        if l < n:
            u = float(rng.uniform(0.0, TWO_PI))
            gain_b = string_objective(R, B.extend(u), transform) - f_b
            gain_a = string_objective(R, A.extend(u), transform) - f_a
            if gain_b < gain_a - slack:
                violations["diminishing_returns"] += 1
    return violations


def run_invariant_suite(
    R: HermitianMatrix,
    *,
    seed: int = 0,
    grid_points: int = 16,
    samples: int = 100,
    draws: int = 200,
) -> CheckReport:
    n = R.n
    rng = np.random.default_rng(seed)
    report = CheckReport(n=n)

    ed = eigen_decompose(R)
    bounds = compute_bounds(R)
    lam_min, lam_max = ed.smallest, ed.largest
    eps = 1e-8 * max(1.0, abs(lam_max) * n)

    reports = {
        "D": solve_dominant_matching(R),
        "Greedy": solve_greedy(R),
        "RowSwapGreedy": solve_row_swap_greedy(R),
        "PowerMethod": solve_power_method(R, random_vector(n, int(rng.integers(0, 2**63 - 1)))),
        "Random": solve_random(R, int(rng.integers(0, 2**63 - 1))),
    }
    for name, solved in reports.items():
        report.add(
            f"spectral_sandwich[{name}]",
            lam_min * n - eps <= solved.value <= lam_max * n + eps,
            f"value={solved.value:.6g} in [{lam_min * n:.6g}, {lam_max * n:.6g}]",
        )

    if lam_min >= -1e-9 * max(1.0, abs(lam_max)) and lam_max > 0:
        ratio = reports["D"].value / (lam_max * n)
        report.add("prop1_bound", ratio >= bounds.prop1_ratio - 1e-9, f"ratio={ratio:.6g} bound={bounds.prop1_ratio:.6g}")

    transform = build_rbar(R)
    expected = remark1_trace(transform.deltas)
    report.add(
        "remark1_identity",
        abs(transform.trace_rbar - expected) <= 1e-9 * max(1.0, abs(expected)),
        f"Tr(Rbar)={transform.trace_rbar:.6g} sum={expected:.6g}",
    )

    violations = sample_string_properties(R, rng, draws)
    report.add("string_submodularity", not any(violations.values()), str(violations))

    perturbed = R.to_array() + np.diag(rng.uniform(-10.0, 10.0, n))
    same = np.array_equal(solve_greedy(HermitianMatrix(perturbed)).solution.phases, reports["Greedy"].solution.phases)
    report.add("greedy_diagonal_invariance", same)

    report.add(
        "row_swap_dominance",
        reports["RowSwapGreedy"].value >= reports["Greedy"].value,
        f"row_swap={reports['RowSwapGreedy'].value:.6g} greedy={reports['Greedy'].value:.6g}",
    )
    trace = np.asarray(reports["PowerMethod"].trace)
    report.add("power_monotonic", bool(np.all(np.diff(trace) >= -1e-12)), f"{trace.size} iterates")

    report.add("prop2_implies_thm1", bounds.thm1_applicable or not bounds.prop2_applicable)

    oracle_value: Optional[float] = None
    if n <= ORACLE_GUARANTEE_MAX_N:
        oracle_value = grid_oracle(R, grid_points).value
        report.add("oracle_below_spectral_cap", oracle_value <= lam_max * n + 1e-8, f"oracle={oracle_value:.6g}")
        greedy_value = reports["Greedy"].value
        if bounds.thm1_applicable:
            report.add(
                "theorem1_guarantee",
                greedy_value >= GREEDY_RATIO * oracle_value - 1e-9,
                f"greedy={greedy_value:.6g} oracle={oracle_value:.6g}",
            )
        if bounds.prop2_applicable:
            report.add(
                "prop2_guarantee",
                greedy_value >= bounds.prop2_ratio * oracle_value - 1e-9,
                f"greedy={greedy_value:.6g} oracle={oracle_value:.6g}",
            )

    if bounds.prop2_applicable:
        appendix = appendix_inequalities(R, grid_points)
        report.add("appendix_inequalities", appendix.all_hold, str(appendix.clauses))
        if n <= FLOOR_MAX_N:
            floor_ok = universal_floor_check(R, samples, int(rng.integers(0, 2**63 - 1)), grid_points)
            report.add("universal_floor", floor_ok, f"{samples} samples")

    for failure in report.failures:
        log.warning("Check %s failed: %s", failure.name, failure.detail)
    log.info("Invariant suite on N=%d: %d checks, %d failed", n, len(report.results), len(report.failures))
    return report
