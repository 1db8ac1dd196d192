import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import antimean as am
from antimean import (
    DomainError,
    InvalidDimension,
    NonConvergence,
    SelfAdjointMatrix,
    canonical_phase,
    hermitian_psd_check,
    spectral_decompose,
)

from support import random_unitary


def random_self_adjoint(rng, d, complex_):
    if complex_:
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    else:
        g = rng.standard_normal((d, d))
    return SelfAdjointMatrix(g + g.conj().T)


def test_identity_eigensystem():
    sd = spectral_decompose(SelfAdjointMatrix(np.eye(3)))
    assert np.allclose(sd.eigenvalues, [1.0, 1.0, 1.0])
    assert sd.min_gap == 0.0
    gram = sd.eigenvectors.T @ sd.eigenvectors
    assert np.max(np.abs(gram - np.eye(3))) <= 1e-10


def test_already_diagonal():
    sd = spectral_decompose(SelfAdjointMatrix(np.diag([0.25, 0.75])))
    assert np.allclose(sd.eigenvalues, [0.25, 0.75], atol=0)
    assert np.allclose(sd.eigenvectors, np.eye(2), atol=0)
    assert sd.min_gap == pytest.approx(0.5)


def test_two_by_two_closed_form():
    # characteristic polynomial by hand: lam = (1 +- sqrt(1/2)) / 2, and the
    # bottom eigenvector is proportional to (0.25, lam_1 - 0.75)
    sd = spectral_decompose(SelfAdjointMatrix(np.array([[0.75, 0.25], [0.25, 0.25]])))
    lam1 = (1.0 - np.sqrt(0.5)) / 2.0
    lam2 = (1.0 + np.sqrt(0.5)) / 2.0
    assert sd.eigenvalues[0] == pytest.approx(lam1, abs=1e-12)
    assert sd.eigenvalues[1] == pytest.approx(lam2, abs=1e-12)
    direction = np.array([0.25, lam1 - 0.75])
    direction = direction / np.linalg.norm(direction)
    assert abs(np.dot(direction, sd.eigenvectors[:, 0])) == pytest.approx(1.0, abs=1e-12)


def test_ties_keep_column_order():
    sd = spectral_decompose(SelfAdjointMatrix(np.diag([1.0, 1.0, 2.0])))
    assert np.array_equal(sd.eigenvectors[:, 0], np.array([1.0, 0.0, 0.0]))
    assert np.array_equal(sd.eigenvectors[:, 1], np.array([0.0, 1.0, 0.0]))


@pytest.mark.parametrize("complex_", [False, True])
def test_reconstruction_orthonormality_trace(complex_):
    rng = np.random.default_rng(42 if complex_ else 43)
    for trial in range(100):
        d = int(rng.integers(2, 13))
        m = random_self_adjoint(rng, d, complex_)
        sd = spectral_decompose(m)
        rebuilt = (sd.eigenvectors * sd.eigenvalues[None, :]) @ sd.eigenvectors.conj().T
        scale = max(1.0, m.frobenius_norm())
        assert np.linalg.norm(rebuilt - m.entries, "fro") <= 1e-10 * scale
        gram = sd.eigenvectors.conj().T @ sd.eigenvectors
        assert np.max(np.abs(gram - np.eye(d))) <= 1e-10
        assert abs(np.sum(sd.eigenvalues) - m.trace()) <= 1e-10 * scale
        # canonical phase: the largest-modulus entry of each column is real
        # and strictly positive
        for j in range(d):
            col = sd.eigenvectors[:, j]
            pivot = col[int(np.argmax(np.abs(col)))]
            assert pivot.imag == 0.0 if complex_ else True
            assert pivot.real > 0.0


@pytest.mark.parametrize("complex_", [False, True])
def test_eigenvalues_match_lapack(complex_):
    rng = np.random.default_rng(7)
    for _ in range(25):
        d = int(rng.integers(2, 10))
        m = random_self_adjoint(rng, d, complex_)
        sd = spectral_decompose(m)
        reference = np.linalg.eigvalsh(m.entries)
        assert np.max(np.abs(sd.eigenvalues - reference)) <= 1e-9 * max(
            1.0, m.frobenius_norm()
        )


def test_unitary_invariance_of_spectrum():
    rng = np.random.default_rng(11)
    for _ in range(25):
        d = int(rng.integers(2, 9))
        m = random_self_adjoint(rng, d, complex_=True)
        u = random_unitary(rng, d)
        rotated = SelfAdjointMatrix(u @ m.entries @ u.conj().T)
        a = spectral_decompose(m).eigenvalues
        b = spectral_decompose(rotated).eigenvalues
        assert np.max(np.abs(a - b)) <= 1e-9


def test_deterministic_bits():
    rng = np.random.default_rng(3)
    m = random_self_adjoint(rng, 6, complex_=True)
    first = spectral_decompose(m)
    second = spectral_decompose(SelfAdjointMatrix(np.array(m.entries)))
    assert np.array_equal(first.eigenvalues, second.eigenvalues)
    assert np.array_equal(first.eigenvectors, second.eigenvectors)


def test_nonconvergence_when_budget_exhausted(monkeypatch):
    # the real budget (100 sweeps) is unreachable for the dimensions this
    # library targets, so exercise the guard with a starved budget
    monkeypatch.setattr(am.linalg, "_SWEEP_BUDGET", 1)
    rng = np.random.default_rng(5)
    m = random_self_adjoint(rng, 12, complex_=True)
    with pytest.raises(NonConvergence):
        spectral_decompose(m, tol=1e-14)


def test_zero_matrix_is_fine():
    sd = spectral_decompose(SelfAdjointMatrix(np.zeros((3, 3))))
    assert np.array_equal(sd.eigenvalues, np.zeros(3))


def test_input_validation():
    with pytest.raises(InvalidDimension):
        SelfAdjointMatrix(np.zeros((1, 1)))
    with pytest.raises(InvalidDimension):
        SelfAdjointMatrix(np.zeros((2, 3)))
    with pytest.raises(DomainError):
        SelfAdjointMatrix(np.eye(2) + 0j, variant="real")
    with pytest.raises(DomainError):
        spectral_decompose(SelfAdjointMatrix(np.eye(2)), tol=0.0)


def test_storage_is_exactly_self_adjoint():
    raw = np.array([[1.0, 99.0], [2.0 + 1e-13, 3.0]])  # upper triangle is ignored
    m = SelfAdjointMatrix(raw)
    assert m.entries[0, 1] == m.entries[1, 0]
    assert m.entries[0, 1] == 2.0 + 1e-13
    z = np.array([[1.0, 0.0], [1.0 + 2.0j, -1.0]], dtype=complex)
    h = SelfAdjointMatrix(z)
    assert h.entries[0, 1] == np.conj(h.entries[1, 0])


def test_psd_check_examples():
    assert hermitian_psd_check(SelfAdjointMatrix(np.eye(3)))
    assert not hermitian_psd_check(SelfAdjointMatrix(np.diag([-1.0, 1.0])))
    # moment-style sums of rank-one projectors stay PSD
    rng = np.random.default_rng(19)
    for _ in range(100):
        d = int(rng.integers(2, 7))
        n = int(rng.integers(1, 9))
        z = rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d))
        z = z / np.linalg.norm(z, axis=1, keepdims=True)
        j = (z[:, :, None] * z.conj()[:, None, :]).mean(axis=0)
        assert hermitian_psd_check(SelfAdjointMatrix(j))


@settings(max_examples=50, deadline=None)
@given(
    st.lists(
        st.tuples(
            st.floats(-10, 10, allow_nan=False, allow_infinity=False),
            st.floats(-10, 10, allow_nan=False, allow_infinity=False),
        ),
        min_size=2,
        max_size=6,
    )
)
def test_canonical_phase_properties(pairs):
    v = np.array([re + 1j * im for re, im in pairs])
    if np.linalg.norm(v) < 1e-6:
        return
    fixed = canonical_phase(v)
    # norm preserved, pivot entry real positive, idempotent
    assert np.linalg.norm(fixed) == pytest.approx(np.linalg.norm(v), rel=1e-12)
    pivot = fixed[int(np.argmax(np.abs(fixed)))]
    assert pivot.imag == 0.0
    assert pivot.real > 0.0
    again = canonical_phase(fixed)
    assert np.allclose(again, fixed, rtol=0, atol=1e-15)
    # a unit-scalar multiple canonicalizes to the same representative
    other = canonical_phase(v * np.exp(0.73j))
    assert np.allclose(other, fixed, rtol=0, atol=1e-12 * np.linalg.norm(v))
