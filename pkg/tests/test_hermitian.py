import math

import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings, strategies as st
from hypothesis.extra.numpy import arrays

from uqpkit.errors import (
    DimensionMismatch,
    EmptyMatrix,
    IndexOutOfRange,
    NonFinite,
    NotHermitian,
    SingularCovariance,
)
from uqpkit.models import UnimodularVector
from uqpkit.services.hermitian import (
    build_beamforming_matrix,
    build_snr_matrix,
    canonicalize_phase,
    diagonal_load,
    dominant_eigenpair,
    eigen_decompose,
    m_dominance,
    make_hermitian,
    principal_submatrix,
    project_onto_eigenbasis,
    quadratic_form,
    random_dominant,
    random_psd,
)


def phases_of(*values) -> UnimodularVector:
    return UnimodularVector.from_complex(np.array(values, dtype=complex))


@st.composite
def hermitian_matrices(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    elements = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
    re = draw(arrays(np.float64, (n, n), elements=elements))
    im = draw(arrays(np.float64, (n, n), elements=elements))
    raw = re + 1j * im
    return make_hermitian((raw + raw.conj().T) / 2)


@st.composite
def matrix_and_vector(draw):
    R = draw(hermitian_matrices())
    phases = draw(arrays(np.float64, R.n, elements=st.floats(0, 2 * math.pi, allow_nan=False)))
    return R, UnimodularVector(phases)


def test_make_hermitian_accepts_real_and_complex():
    assert make_hermitian([[2, 1], [1, 2]]).n == 2
    R = make_hermitian([[1, 1j], [-1j, 1]])
    assert R.entries[0, 1] == 1j


def test_make_hermitian_rejects_bad_input():
    with pytest.raises(NotHermitian):
        make_hermitian([[1, 1j], [1j, 1]])
    with pytest.raises(EmptyMatrix):
        make_hermitian([])
    with pytest.raises(DimensionMismatch):
        make_hermitian([[1, 2, 3], [2, 1, 0]])
    with pytest.raises(NonFinite):
        make_hermitian([[1, float("nan")], [float("nan"), 1]])


def test_hermitian_matrix_is_read_only(counter_example):
    with pytest.raises(ValueError):
        counter_example.entries[0, 0] = 5


def test_quadratic_form_examples(counter_example, skew_pair):
    assert quadratic_form(make_hermitian(np.eye(3)), UnimodularVector.ones(3)) == pytest.approx(3)
    assert quadratic_form(counter_example, UnimodularVector.ones(2)) == 6
    assert quadratic_form(skew_pair, phases_of(1, -1j)) == pytest.approx(4)


def test_quadratic_form_dimension_check(counter_example):
    with pytest.raises(DimensionMismatch):
        quadratic_form(counter_example, UnimodularVector.ones(3))


def test_canonicalize_phase_makes_largest_entry_real():
    v = canonicalize_phase(np.array([0.1j, -2j, 0.5]))
    assert v[1] == pytest.approx(2)
    # ties go to the lowest index
    tie = canonicalize_phase(np.array([1j, -1j]) / math.sqrt(2))
    assert tie[0].imag == pytest.approx(0, abs=1e-15)
    assert tie[0].real > 0


def test_eigen_decompose_counter_example(counter_example):
    ed = eigen_decompose(counter_example)
    assert ed.eigenvalues == pytest.approx([1, 3])
    assert ed.dominant_vector == pytest.approx(np.array([1, 1]) / math.sqrt(2))


def test_eigen_decompose_identity_and_reconstruction():
    assert eigen_decompose(make_hermitian(np.eye(4))).eigenvalues == pytest.approx(np.ones(4))
    R = random_psd(5, seed=3)
    ed = eigen_decompose(R)
    rebuilt = (ed.eigenvectors * ed.eigenvalues) @ ed.eigenvectors.conj().T
    assert np.linalg.norm(rebuilt - R.entries) <= 1e-8 * np.linalg.norm(R.entries)


def test_dominant_eigenpair_examples(counter_example, diag_35):
    lam, vec = dominant_eigenpair(counter_example)
    assert lam == pytest.approx(3)
    assert vec == pytest.approx(np.array([1, 1]) / math.sqrt(2), abs=1e-8)

    v = np.array([1, 1j])
    lam, vec = dominant_eigenpair(make_hermitian(np.outer(v, v.conj())))
    assert lam == pytest.approx(2)
    assert vec == pytest.approx(v / math.sqrt(2), abs=1e-8)

    lam, vec = dominant_eigenpair(diag_35)
    assert lam == pytest.approx(5)
    assert vec == pytest.approx(np.array([0, 1]), abs=1e-8)


def test_dominant_eigenpair_handles_indefinite_matrix():
    R = make_hermitian([[0, 1], [1, 0]])
    lam, _ = dominant_eigenpair(R)
    assert lam == pytest.approx(1)


def test_diagonal_load_examples():
    identity = make_hermitian(np.eye(2))
    loaded, shift = diagonal_load(identity)
    assert loaded is identity
    assert shift == 0

    loaded, shift = diagonal_load(make_hermitian([[0, 1], [1, 0]]))
    assert shift == pytest.approx(-1)
    assert loaded.entries == pytest.approx(np.ones((2, 2)))


def test_principal_submatrix(counter_example):
    assert principal_submatrix(counter_example, 1).entries == pytest.approx(np.array([[2]]))
    assert principal_submatrix(counter_example, 2).entries == pytest.approx(counter_example.entries)
    R = random_psd(4, seed=1)
    assert np.array_equal(principal_submatrix(R, 3).entries, R.entries[:3, :3])
    with pytest.raises(IndexOutOfRange):
        principal_submatrix(R, 0)
    with pytest.raises(IndexOutOfRange):
        principal_submatrix(R, 5)


def test_m_dominance_examples(counter_example, tight_dominant):
    assert m_dominance(counter_example, 2)
    assert not m_dominance(counter_example, 4)
    assert m_dominance(tight_dominant, 4)


def test_random_psd_properties():
    R = random_psd(2, seed=11)
    assert np.all((eigen_decompose(R).eigenvalues >= -1e-9) & (eigen_decompose(R).eigenvalues <= 1000))
    assert np.array_equal(random_psd(6, seed=5).entries, random_psd(6, seed=5).entries)
    assert eigen_decompose(random_psd(50, seed=2)).smallest >= -1e-9


def test_random_dominant_properties():
    R = random_dominant(4, seed=9, M=8)
    assert m_dominance(R, 8)
    assert np.array_equal(R.entries, random_dominant(4, seed=9, M=8).entries)


def test_build_snr_matrix_examples():
    identity = make_hermitian(np.eye(3))
    assert build_snr_matrix(identity, np.ones(3)).entries == pytest.approx(np.eye(3))

    m_cov = make_hermitian(np.linalg.inv(np.array([[2.0, 1.0], [1.0, 2.0]])))
    R = build_snr_matrix(m_cov, [1, 1j])
    assert R.entries == pytest.approx(np.array([[2, 1j], [-1j, 2]]))


def test_build_snr_matrix_checks_inputs():
    with pytest.raises(DimensionMismatch):
        build_snr_matrix(make_hermitian(np.eye(2)), [1, 1, 1])
    with pytest.raises(SingularCovariance):
        build_snr_matrix(make_hermitian(np.ones((2, 2))), [1, 1])


def test_build_beamforming_matrix():
    assert build_beamforming_matrix(make_hermitian(np.eye(2))).entries == pytest.approx(np.eye(2))
    assert build_beamforming_matrix(make_hermitian(np.diag([2.0, 4.0]))).entries == pytest.approx(np.diag([0.5, 0.25]))
    m_cov = make_hermitian(random_psd(5, seed=4).entries + 10 * np.eye(5))
    product = m_cov.entries @ build_beamforming_matrix(m_cov).entries
    assert np.abs(product - np.eye(5)).max() <= 1e-8


def test_project_onto_eigenbasis_examples(counter_example):
    ed = eigen_decompose(counter_example)
    assert project_onto_eigenbasis(ed, UnimodularVector.ones(2)) == pytest.approx([0, 2], abs=1e-12)
    assert project_onto_eigenbasis(ed, phases_of(1, -1)) == pytest.approx([2, 0], abs=1e-12)


@hyp_settings(max_examples=60, deadline=None)
@given(matrix_and_vector(), st.floats(0, 2 * math.pi, allow_nan=False))
def test_global_phase_invariance(pair, phi):
    R, s = pair
    rotated = UnimodularVector(s.phases + phi)
    base = quadratic_form(R, s)
    assert quadratic_form(R, rotated) == pytest.approx(base, rel=1e-9, abs=1e-9 * max(1.0, np.abs(R.entries).sum()))


@hyp_settings(max_examples=60, deadline=None)
@given(matrix_and_vector())
def test_spectral_sandwich_and_parseval(pair):
    R, s = pair
    ed = eigen_decompose(R)
    value = quadratic_form(R, s)
    eps = 1e-8 * max(1.0, abs(ed.largest) * R.n, abs(ed.smallest) * R.n)
    assert ed.smallest * R.n - eps <= value <= ed.largest * R.n + eps

    t = project_onto_eigenbasis(ed, s)
    assert t.sum() == pytest.approx(R.n)
    assert float(ed.eigenvalues @ t) == pytest.approx(value, rel=1e-8, abs=eps)


@hyp_settings(max_examples=40, deadline=None)
@given(matrix_and_vector())
def test_diagonal_load_value_identity(pair):
    R, s = pair
    loaded, shift = diagonal_load(R)
    assert eigen_decompose(loaded).smallest >= -1e-8 * max(1.0, abs(shift))
    scale = 1e-9 * max(1.0, np.abs(R.entries).sum())
    assert quadratic_form(loaded, s) == pytest.approx(quadratic_form(R, s) - shift * R.n, abs=scale)


@pytest.mark.parametrize("n", [2, 5, 20, 50])
def test_dominant_eigenpair_on_random_psd_matches_eigh(n):
    for seed in range(40):
        R = random_psd(n, seed=seed)
        lam, vec = dominant_eigenpair(R)
        scale = max(1.0, abs(lam))
        assert np.linalg.norm(R.entries @ vec - lam * vec) <= 1e-8 * scale
        assert np.linalg.norm(vec) == pytest.approx(1)
        ed = eigen_decompose(R)
        assert lam == pytest.approx(ed.largest, rel=1e-8, abs=1e-8)
        if ed.largest - ed.eigenvalues[-2] > 1e-6 * scale:
            assert abs(np.vdot(ed.dominant_vector, vec)) == pytest.approx(1, abs=1e-6)


def test_dominant_eigenpair_slow_gap_still_meets_residual():
    # top two eigenvalues 1e-9 apart
    q, _ = np.linalg.qr(np.random.default_rng(7).standard_normal((6, 6)))
    R = make_hermitian(q @ np.diag([0.1, 0.2, 0.3, 0.4, 1.0 - 1e-9, 1.0]) @ q.T)
    lam, vec = dominant_eigenpair(R)
    assert lam == pytest.approx(1.0, abs=1e-8)
    assert np.linalg.norm(R.entries @ vec - lam * vec) <= 1e-8


def _large_negative_spectrum() -> np.ndarray:
    rng = np.random.default_rng(11)
    q, _ = np.linalg.qr(rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6)))
    a = q @ np.diag([-1e9, -8e8, -5e8, -3e8, -1e8, 0.0]) @ q.conj().T
    return (a + a.conj().T) / 2


def test_eigen_decompose_accepts_large_negative_spectrum():
    R = make_hermitian(_large_negative_spectrum())
    ed = eigen_decompose(R)
    assert ed.smallest == pytest.approx(-1e9, rel=1e-9)
    assert ed.largest == pytest.approx(0.0, abs=1e-3)
    loaded, shift = diagonal_load(R, ed)
    assert shift == pytest.approx(-1e9, rel=1e-9)
    assert eigen_decompose(loaded).smallest == pytest.approx(0.0, abs=1e-3)
