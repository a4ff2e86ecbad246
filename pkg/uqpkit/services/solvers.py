from __future__ import annotations

import logging
from typing import List, Optional, Tuple

import numpy as np

from ..config import get_settings
from ..errors import PrefixTooLong
from ..models import (
    CodeString,
    HermitianMatrix,
    Method,
    RowSwap,
    SolverReport,
    TWO_PI,
    UnimodularVector,
)
from ..utils.seeds import derive_seed
from .hermitian import diagonal_load, eigen_decompose, quadratic_form


log = logging.getLogger("uqpkit.solvers")
settings = get_settings()


def solve_dominant_matching(R: HermitianMatrix) -> SolverReport:
    ed = eigen_decompose(R)
    # loading shifts the spectrum but leaves the eigenvectors untouched
    _, shift = diagonal_load(R, ed)
    solution = UnimodularVector.from_complex(ed.dominant_vector, zero_tol=settings.zero_entry_tol)
    return SolverReport(
        method=Method.D,
        solution=solution,
        value=quadratic_form(R, solution),
        iterations=1,
        shift=shift,
    )


def _next_phase(entries: np.ndarray, prefix_values: np.ndarray) -> float:
    k = prefix_values.shape[0]
    c = complex(entries[k, :k] @ prefix_values)
    if abs(c) < settings.greedy_tie_tol:
        return 0.0
    return float(np.angle(c)) % TWO_PI


def greedy_step(R: HermitianMatrix, prefix: CodeString) -> complex:
    """Next greedy entry: argmax over unimodular x of [prefix, x]^H R_{k+1} [prefix, x].

    The only x-dependent part of the extended form is 2·Re(conj(x)·c) with
    c = Σ_i r_{k+1,i} prefix(i), so the maximizer is x = e^{j·arg(c)}.
    """

    k = len(prefix)
    if not 1 <= k < R.n:
        raise PrefixTooLong(f"Prefix length {k} must be in [1, {R.n - 1}]")
    return complex(np.exp(1j * _next_phase(R.entries, prefix.values)))


def _greedy_phases(entries: np.ndarray) -> Tuple[np.ndarray, List[float]]:
    n = entries.shape[0]
    phases = np.zeros(n)
    values = np.ones(n, dtype=np.complex128)
    running = float(entries[0, 0].real)
    trace = [running]
    for k in range(1, n):
        phase = _next_phase(entries, values[:k])
        phases[k] = phase
        values[k] = np.exp(1j * phase)
        cross = complex(np.conj(values[k]) * (entries[k, :k] @ values[:k]))
        running += float(entries[k, k].real) + 2.0 * cross.real
        trace.append(running)
    return phases, trace


def solve_greedy(R: HermitianMatrix) -> SolverReport:
    phases, trace = _greedy_phases(R.entries)
    solution = UnimodularVector(phases)
    value = quadratic_form(R, solution)
    trace[-1] = value
    return SolverReport(
        method=Method.GREEDY,
        solution=solution,
        value=value,
        iterations=R.n - 1,
        trace=tuple(trace),
    )


def conjugate_by_swap(R: HermitianMatrix, p: Optional[RowSwap]) -> HermitianMatrix:
    if p is None:
        return R
    order = p.permutation(R.n)
    return HermitianMatrix(R.entries[np.ix_(order, order)])


def swap_candidates(n: int) -> List[Optional[RowSwap]]:
    """Identity first, then every P_mn ordered by n, then m."""

    candidates: List[Optional[RowSwap]] = [None]
    for low in range(1, n):
        for high in range(low + 1, n + 1):
            candidates.append(RowSwap(m=high, n=low))
    return candidates


def solve_row_swap_greedy(R: HermitianMatrix) -> SolverReport:
    best_value = -np.inf
    best_solution: Optional[UnimodularVector] = None
    best_swap: Optional[RowSwap] = None
    trace: List[float] = []

    candidates = swap_candidates(R.n)
    for swap in candidates:
        conjugated = conjugate_by_swap(R, swap)
        phases, _ = _greedy_phases(conjugated.entries)
        # P is its own inverse, so P·ĝ indexes ĝ by the same permutation
        if swap is not None:
            phases = phases[swap.permutation(R.n)]
        candidate = UnimodularVector(phases)
        value = quadratic_form(R, candidate)
        trace.append(value)
        if value > best_value:
            best_value, best_solution, best_swap = value, candidate, swap

    assert best_solution is not None
    return SolverReport(
        method=Method.ROW_SWAP_GREEDY,
        solution=best_solution,
        value=best_value,
        iterations=len(candidates),
        trace=tuple(trace),
        chosen_swap=best_swap,
    )


def solve_power_method(
    R: HermitianMatrix,
    s0: Optional[UnimodularVector] = None,
    max_iters: Optional[int] = None,
    tol: Optional[float] = None,
) -> SolverReport:
    max_iters = settings.power_max_iters if max_iters is None else max_iters
    tol = settings.power_tol if tol is None else tol
    loaded, shift = diagonal_load(R)
    offset = shift * R.n

    current = s0 if s0 is not None else UnimodularVector.ones(R.n)
    value = quadratic_form(loaded, current) + offset
    trace = [value]
    iterations = 0
    reason = "max_iters"
    while iterations < max_iters:
        iterations += 1
        candidate = UnimodularVector.from_complex(
            loaded.entries @ current.values, zero_tol=settings.greedy_tie_tol
        )
        candidate_value = quadratic_form(loaded, candidate) + offset
        if candidate_value < value:
            # only rounding can push a PSD power step down; the previous iterate is the fixed point
            reason = "rounding"
            break
        improvement = candidate_value - value
        current, value = candidate, candidate_value
        trace.append(value)
        if improvement <= tol * max(1.0, abs(value)):
            reason = "tol"
            break

    log.debug("Power method stopped after %d iterations (%s)", iterations, reason)
    return SolverReport(
        method=Method.POWER_METHOD,
        solution=current,
        value=quadratic_form(R, current),
        iterations=iterations,
        trace=tuple(trace),
        shift=shift,
    )


def random_vector(n: int, seed: int) -> UnimodularVector:
    rng = np.random.default_rng(seed)
    return UnimodularVector(rng.uniform(0.0, TWO_PI, n))


def solve_random(R: HermitianMatrix, seed: int) -> SolverReport:
    solution = random_vector(R.n, seed)
    return SolverReport(
        method=Method.RANDOM,
        solution=solution,
        value=quadratic_form(R, solution),
        iterations=0,
    )


def solve(
    R: HermitianMatrix,
    method: Method,
    *,
    seed: int = 0,
    max_iters: Optional[int] = None,
    tol: Optional[float] = None,
) -> SolverReport:
    """Run one heuristic; ``seed`` drives the random baseline and the power-method start."""

    if method is Method.D:
        return solve_dominant_matching(R)
    if method is Method.GREEDY:
        return solve_greedy(R)
    if method is Method.ROW_SWAP_GREEDY:
        return solve_row_swap_greedy(R)
    if method is Method.POWER_METHOD:
        start = random_vector(R.n, derive_seed(seed, R.n, 1))
        return solve_power_method(R, start, max_iters=max_iters, tol=tol)
    if method is Method.RANDOM:
        return solve_random(R, derive_seed(seed, R.n, 0))
    raise ValueError(f"Unknown method: {method}")
