from __future__ import annotations

import logging
from typing import Tuple

import numpy as np

from ..config import get_settings
from ..errors import (
    ConvergenceFailure,
    DimensionMismatch,
    EmptyMatrix,
    IndexOutOfRange,
    NonFinite,
    NotHermitian,
    SingularCovariance,
    ValidationError,
)
from ..models import EigenDecomposition, HermitianMatrix, UnimodularVector


log = logging.getLogger("uqpkit.hermitian")
settings = get_settings()


def _symmetrized(array: np.ndarray) -> HermitianMatrix:
    sym = 0.5 * (array + array.conj().T)
    np.fill_diagonal(sym, sym.diagonal().real)
    return HermitianMatrix(sym)


def _check_dims(R: HermitianMatrix, n: int, what: str) -> None:
    if R.n != n:
        raise DimensionMismatch(f"{what} has length {n}, matrix is {R.n}x{R.n}")


def make_hermitian(raw) -> HermitianMatrix:
    try:
        array = np.asarray(raw, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"Matrix entries are not numeric: {exc}") from exc
    if array.size == 0:
        raise EmptyMatrix("Matrix has no entries")
    if array.ndim != 2 or array.shape[0] != array.shape[1]:
        raise DimensionMismatch(f"Matrix must be square, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise NonFinite("Matrix contains NaN or infinite entries")
    asymmetry = float(np.max(np.abs(array - array.conj().T)))
    if asymmetry > settings.hermitian_tol:
        raise NotHermitian(f"Matrix is not Hermitian (max |r_ij - conj(r_ji)| = {asymmetry:.3e})")
    return _symmetrized(array)


def quadratic_form(R: HermitianMatrix, s: UnimodularVector) -> float:
    _check_dims(R, s.n, "vector")
    values = s.values
    return float(np.vdot(values, R.entries @ values).real)


def canonicalize_phase(vector: np.ndarray) -> np.ndarray:
    """Rotate ``vector`` so its largest-modulus entry (lowest index on ties) is real positive."""

    vector = np.asarray(vector, dtype=np.complex128)
    moduli = np.abs(vector)
    top = moduli.max()
    if top == 0.0:
        return vector.copy()
    idx = int(np.flatnonzero(moduli >= top - 1e-12 * top)[0])
    return vector * (np.conj(vector[idx]) / moduli[idx])


def eigen_decompose(R: HermitianMatrix) -> EigenDecomposition:
    try:
        eigenvalues, eigenvectors = np.linalg.eigh(R.entries)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure("eigh did not converge", residual=float("nan"), iterations=0) from exc

    eigenvectors = np.column_stack([canonicalize_phase(eigenvectors[:, i]) for i in range(R.n)])
    residuals = np.linalg.norm(R.entries @ eigenvectors - eigenvectors * eigenvalues, axis=0)
    limit = settings.eigen_residual_tol * max(1.0, abs(float(eigenvalues[0])), abs(float(eigenvalues[-1])))
    worst = float(residuals.max())
    if worst > limit:
        raise ConvergenceFailure("Eigen residual above contract", residual=worst, iterations=0)
    return EigenDecomposition(eigenvalues=eigenvalues, eigenvectors=eigenvectors)


def _power_shift(entries: np.ndarray) -> float:
    """Zero when ``entries`` is PSD, else the Gershgorin lift that makes it so."""

    n = entries.shape[0]
    scale = max(1.0, float(np.abs(entries).max()))
    try:
        np.linalg.cholesky(entries + settings.pd_gate * scale * np.eye(n))
        return 0.0
    except np.linalg.LinAlgError:
        pass
    diag = entries.diagonal().real
    radii = np.abs(entries).sum(axis=1) - np.abs(diag)
    return max(0.0, -float(np.min(diag - radii)))


def dominant_eigenpair(R: HermitianMatrix) -> Tuple[float, np.ndarray]:
    """Top eigenpair by power iteration.

    PSD input is iterated as is. Indefinite input runs on ``R + σI`` where σ lifts the
    Gershgorin lower bound to zero, so the largest eigenvalue is also the largest in
    modulus. The start vector is a fixed pseudo-random complex vector, which keeps the
    result deterministic. When the iteration cap is reached first, the pair is taken
    from ``eigen_decompose`` instead.
    """

    entries = R.entries
    n = R.n
    shift = _power_shift(entries)
    shifted = entries + shift * np.eye(n) if shift else entries

    rng = np.random.default_rng(0)
    x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    x /= np.linalg.norm(x)
    y = shifted @ x

    cap = settings.eigen_cap_factor * n
    residual = float("inf")
    for iteration in range(1, cap + 1):
        norm = float(np.linalg.norm(y))
        if norm == 0.0:
            # x lies in the null space of a zero (shifted) matrix
            return 0.0 - shift, canonicalize_phase(x)
        x = y / norm
        y = shifted @ x
        lam = float(np.vdot(x, y).real)
        residual = float(np.linalg.norm(y - lam * x))
        if residual <= settings.dominant_residual_tol * max(1.0, abs(lam - shift)):
            log.debug("Power iteration converged after %d steps (shift %.3g)", iteration, shift)
            return lam - shift, canonicalize_phase(x)

    log.debug("Power iteration stalled at residual %.3e after %d steps, using eigh", residual, cap)
    ed = eigen_decompose(R)
    return ed.largest, ed.dominant_vector


def diagonal_load(R: HermitianMatrix, ed: EigenDecomposition | None = None) -> Tuple[HermitianMatrix, float]:
    ed = ed or eigen_decompose(R)
    smallest = ed.smallest
    if smallest >= 0.0:
        return R, 0.0
    log.debug("Diagonal loading by %.6g", smallest)
    loaded = R.to_array() - smallest * np.eye(R.n)
    return HermitianMatrix(loaded), smallest


def principal_submatrix(R: HermitianMatrix, k: int) -> HermitianMatrix:
    if not 1 <= k <= R.n:
        raise IndexOutOfRange(f"k must be in [1, {R.n}], got {k}")
    if k == R.n:
        return R
    return HermitianMatrix(R.entries[:k, :k])


def off_diagonal_row_sums(R: HermitianMatrix) -> np.ndarray:
    off = R.to_array()
    np.fill_diagonal(off, 0.0)
    return np.abs(off).sum(axis=1)


def m_dominance(R: HermitianMatrix, M: float) -> bool:
    if M <= 0:
        raise ValidationError(f"M must be positive, got {M}")
    required = M * off_diagonal_row_sums(R)
    return bool(np.all(R.diagonal >= required * (1.0 - 1e-12)))


def _complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def random_psd(n: int, seed: int, eig_hi: float = 1000.0) -> HermitianMatrix:
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(_complex_gaussian(rng, (n, n)))
    d = r.diagonal()
    q = q * (d / np.abs(d))
    eigenvalues = rng.uniform(0.0, eig_hi, n)
    return _symmetrized((q * eigenvalues) @ q.conj().T)


def random_dominant(n: int, seed: int, M: float) -> HermitianMatrix:
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}")
    if M <= 0:
        raise ValidationError(f"M must be positive, got {M}")
    rng = np.random.default_rng(seed)
    upper = np.triu(_complex_gaussian(rng, (n, n)), 1)
    off = upper + upper.conj().T
    row_sums = np.abs(off).sum(axis=1)
    u = rng.uniform(0.0, 1.0, n)
    return HermitianMatrix(off + np.diag(M * row_sums * (1.0 + u)))


def _inverse_pd(m_cov: HermitianMatrix) -> np.ndarray:
    ed = eigen_decompose(m_cov)
    if ed.smallest <= settings.pd_gate:
        raise SingularCovariance(f"Covariance is not positive definite (lambda_1 = {ed.smallest:.3e})")
    return np.linalg.solve(m_cov.entries, np.eye(m_cov.n, dtype=np.complex128))


def build_snr_matrix(m_cov: HermitianMatrix, p) -> HermitianMatrix:
    steering = np.asarray(p, dtype=np.complex128)
    if steering.shape != (m_cov.n,):
        raise DimensionMismatch(f"Steering vector has shape {steering.shape}, expected ({m_cov.n},)")
    inverse = _inverse_pd(m_cov)
    return _symmetrized(inverse * np.conj(np.outer(steering, steering.conj())))


def build_beamforming_matrix(m_cov: HermitianMatrix) -> HermitianMatrix:
    return _symmetrized(_inverse_pd(m_cov))


def project_onto_eigenbasis(ed: EigenDecomposition, s: UnimodularVector) -> np.ndarray:
    if ed.n != s.n:
        raise DimensionMismatch(f"vector has length {s.n}, decomposition is of size {ed.n}")
    t = ed.eigenvectors.conj().T @ s.values
    return np.abs(t) ** 2
