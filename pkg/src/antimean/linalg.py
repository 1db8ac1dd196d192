"""Self-adjoint matrices and their spectral decomposition.

The eigensolver is a cyclic Jacobi iteration, with complex plane rotations in
the Hermitian case.  For the small dense matrices this library works with it
is fast enough, has high relative accuracy, and is deterministic down to the
last bit for identical inputs, which the serialization and reproducibility
contracts rely on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidDimension, NonConvergence

_SWEEP_BUDGET = 100


def canonical_phase(v: np.ndarray) -> np.ndarray:
    """Rescale a vector by a unit scalar so its largest-modulus entry is real positive.

    Ties on the modulus resolve to the lowest index, so the representative is
    reproducible.  The line spanned by the vector is unchanged.
    """
    i = int(np.argmax(np.abs(v)))
    pivot = v[i]
    if pivot == 0:
        return v
    if np.iscomplexobj(v):
        out = v * (np.conj(pivot) / abs(pivot))
        out[i] = abs(pivot)  # exact: kills the rounding dust in the pivot's phase
        return out
    return -v if pivot < 0 else v


class SelfAdjointMatrix:
    """Square matrix exactly equal to its conjugate transpose as stored.

    Only the lower triangle of the input is authoritative: the upper triangle
    and the imaginary part of the diagonal are rebuilt from it, so consumers
    never see an asymmetric matrix.  ``variant`` is ``"real"`` or
    ``"complex"``.
    """

    __slots__ = ("entries", "dim", "variant")

    def __init__(self, entries, variant: str | None = None):
        raw = np.asarray(entries)
        if raw.ndim != 2 or raw.shape[0] != raw.shape[1]:
            raise InvalidDimension("expected a square matrix")
        if raw.shape[0] < 2:
            raise InvalidDimension("dimension must be at least 2")
        if variant is None:
            variant = "complex" if np.iscomplexobj(raw) else "real"
        if variant not in ("real", "complex"):
            raise DomainError(f"unknown variant {variant!r}")
        if variant == "real" and np.iscomplexobj(raw):
            raise DomainError("complex entries in a real-variant matrix")
        dtype = np.complex128 if variant == "complex" else np.float64
        raw = raw.astype(dtype)
        strict = np.tril(raw, -1)
        full = strict + strict.conj().T + np.diag(np.diag(raw).real).astype(dtype)
        full.setflags(write=False)
        self.entries = full
        self.dim = int(full.shape[0])
        self.variant = variant

    def frobenius_norm(self) -> float:
        return float(np.linalg.norm(self.entries, "fro"))

    def trace(self) -> float:
        return float(np.trace(self.entries).real)


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues in increasing order with canonically phased eigenvectors.

    ``min_gap`` is the gap above the smallest eigenvalue, ``max_gap_top`` the
    gap below the largest one.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    min_gap: float
    max_gap_top: float


def _off_diagonal_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a)), "fro"))


def _rotate(a: np.ndarray, vecs: np.ndarray, p: int, q: int) -> None:
    """Zero a[p, q] with a unitary plane rotation; accumulate it into vecs."""
    apq = a[p, q]
    r = abs(apq)
    if r == 0.0:
        return
    phase = apq / r
    theta = (a[q, q].real - a[p, p].real) / (2.0 * r)
    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.hypot(1.0, theta))
    c = 1.0 / np.hypot(1.0, t)
    cs = (t * c) * phase
    # A <- R* A R where R is the identity outside rows/cols p, q and
    # R[[p,q],[p,q]] = [[c, cs], [-conj(cs), c]].
    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p - np.conj(cs) * col_q
    a[:, q] = cs * col_p + c * col_q
    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = c * row_p - cs * row_q
    a[q, :] = np.conj(cs) * row_p + c * row_q
    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real
    vcol_p = vecs[:, p].copy()
    vcol_q = vecs[:, q].copy()
    vecs[:, p] = c * vcol_p - np.conj(cs) * vcol_q
    vecs[:, q] = cs * vcol_p + c * vcol_q


def spectral_decompose(M: SelfAdjointMatrix, tol: float = 1e-12) -> SpectralDecomposition:
    """Full eigensystem of a self-adjoint matrix by cyclic Jacobi sweeps.

    Parameters
    ----------
    M : SelfAdjointMatrix
    tol : float
        Convergence threshold: sweeps stop once the off-diagonal Frobenius
        norm falls below ``tol`` times the Frobenius norm of ``M``.

    Returns
    -------
    SpectralDecomposition
        Eigenvalues sorted increasingly (ties keep the accumulated column
        order), eigenvectors as canonically phased orthonormal columns.

    Raises
    ------
    NonConvergence
        If the threshold is not met within 100 sweeps.
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    a = np.array(M.entries)
    n = M.dim
    vecs = np.eye(n, dtype=a.dtype)
    limit = tol * float(np.linalg.norm(a, "fro"))
    for _sweep in range(_SWEEP_BUDGET):
        if _off_diagonal_norm(a) <= limit:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(a, vecs, p, q)
    else:
        if _off_diagonal_norm(a) > limit:
            raise NonConvergence(
                f"off-diagonal norm above tol*norm after {_SWEEP_BUDGET} sweeps"
            )
    vals = np.diag(a).real.copy()
    order = np.argsort(vals, kind="stable")
    vals = vals[order]
    vecs = vecs[:, order]
    for j in range(n):
        vecs[:, j] = canonical_phase(vecs[:, j])
    vals.setflags(write=False)
    vecs.setflags(write=False)
    return SpectralDecomposition(
        eigenvalues=vals,
        eigenvectors=vecs,
        min_gap=float(vals[1] - vals[0]),
        max_gap_top=float(vals[-1] - vals[-2]),
    )


def hermitian_psd_check(M: SelfAdjointMatrix) -> bool:
    """True when the spectrum is nonnegative up to 1e-10 * max(1, lambda_max)."""
    sd = spectral_decompose(M)
    return bool(sd.eigenvalues[0] >= -1e-10 * max(1.0, float(sd.eigenvalues[-1])))
