"""Landmark registration, projective points, and the projector embedding.

Planar configurations are held as complex scalars x + iy.  Removing location
with the Helmert sub-matrix and scaling to unit norm yields a preshape in
C^{k-1}; its class under unit-scalar multiples is a point of the shape space
CP^{k-2}.  Axial data enters directly as unit vectors in RP^{N-1}.  Both
kinds of projective point embed as the rank-one orthogonal projector onto
their line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateConfig,
    DimensionMismatch,
    DomainError,
    InvalidDimension,
    OutsideChart,
)
from .linalg import SelfAdjointMatrix, canonical_phase

AFFINE_CHART_TOL = 1e-10  # below this, chart coordinates exceed ~1e10 and mean nothing


class LandmarkConfig:
    """Ordered, labeled configuration of k planar landmarks.

    Accepts a (k, 2) real array or a length-k complex array.  Landmark order
    is significant and is never changed: configurations are labeled.
    """

    __slots__ = ("values",)

    def __init__(self, points):
        pts = np.asarray(points)
        if pts.ndim == 2:
            if pts.shape[1] != 2:
                raise InvalidDimension("expected (k, 2) coordinates or complex scalars")
            values = pts[:, 0].astype(np.float64) + 1j * pts[:, 1].astype(np.float64)
        elif pts.ndim == 1:
            values = pts.astype(np.complex128)
        else:
            raise InvalidDimension("expected a one- or two-dimensional array")
        if values.shape[0] < 1:
            raise InvalidDimension("a configuration needs at least one landmark")
        values.setflags(write=False)
        self.values = values

    @property
    def k(self) -> int:
        return int(self.values.shape[0])

    def planar(self) -> np.ndarray:
        """Coordinates as a (k, 2) real array."""
        return np.column_stack([self.values.real, self.values.imag])


@dataclass(frozen=True)
class HelmertSubmatrix:
    k: int
    rows: np.ndarray


def helmert_submatrix(k: int) -> HelmertSubmatrix:
    """Location-removing sub-matrix with rows (h_j, ..., h_j, -j*h_j, 0, ..., 0).

    Row j (1-based) has j leading entries h_j = (j(j+1))^{-1/2} followed by
    -j*h_j and zeros.  Rows are orthonormal and orthogonal to the all-ones
    vector, so applying the matrix removes the location of a configuration.
    """
    if k < 2:
        raise InvalidDimension("need at least two landmarks")
    rows = np.zeros((k - 1, k))
    for j in range(1, k):
        h = 1.0 / math.sqrt(j * (j + 1.0))
        rows[j - 1, :j] = h
        rows[j - 1, j] = -j * h
    rows.setflags(write=False)
    return HelmertSubmatrix(k=k, rows=rows)


class Preshape:
    """Unit-norm Helmertized configuration; the phase carries the rotation."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        c = np.asarray(coords, dtype=np.complex128)
        if c.ndim != 1 or c.shape[0] < 1:
            raise InvalidDimension("preshape coordinates must form a vector")
        if abs(float(np.linalg.norm(c)) - 1.0) > 1e-12:
            raise DomainError("preshape must have unit norm")
        c.setflags(write=False)
        self.coords = c

    @property
    def dim(self) -> int:
        return int(self.coords.shape[0])

    def to_projective_point(self) -> "ProjectivePoint":
        return ProjectivePoint(self.coords)


def to_preshape(cfg: LandmarkConfig) -> Preshape:
    """Remove location with the Helmert sub-matrix, then scale to unit norm.

    The result is invariant under translating the configuration; rotating or
    rescaling it multiplies the preshape by the same unit (respectively
    positive) scalar.

    Raises
    ------
    DegenerateConfig
        If all landmarks coincide (Helmertized norm below 1e-14).
    """
    helmertized = helmert_submatrix(cfg.k).rows @ cfg.values
    size = float(np.linalg.norm(helmertized))
    if size < 1e-14:
        raise DegenerateConfig("all landmarks coincide")
    return Preshape(helmertized / size)


class ProjectivePoint:
    """Point of a real or complex projective space, canonically represented.

    The stored representative has unit norm and canonical phase (largest-
    modulus entry real and positive), so identical input bits give identical
    representatives and different representatives of one line agree to
    rounding.
    """

    __slots__ = ("rep", "variant")

    def __init__(self, rep):
        v = np.asarray(rep)
        if v.ndim != 1 or v.shape[0] < 2:
            raise InvalidDimension("representative must be a vector of length >= 2")
        variant = "complex" if np.iscomplexobj(v) else "real"
        v = v.astype(np.complex128 if variant == "complex" else np.float64)
        size = float(np.linalg.norm(v))
        if abs(size - 1.0) > 1e-12:
            raise DomainError("representative must have unit norm (see from_vector)")
        v = canonical_phase(v / size)
        v.setflags(write=False)
        self.rep = v
        self.variant = variant

    @classmethod
    def from_vector(cls, v) -> "ProjectivePoint":
        """Normalize an arbitrary nonzero vector into a projective point."""
        v = np.asarray(v)
        size = float(np.linalg.norm(v))
        if size < 1e-14:
            raise DegenerateConfig("cannot project the zero vector")
        return cls(v / size)

    @property
    def dim(self) -> int:
        return int(self.rep.shape[0])

    def inner(self, other: "ProjectivePoint") -> complex:
        """Hermitian inner product of representatives (conjugate-linear first)."""
        self.check_compatible(other)
        return complex(np.vdot(self.rep, other.rep))

    def projectively_equal(self, other: "ProjectivePoint", tol: float = 1e-9) -> bool:
        """Scalar-multiple equivalence: |<p, q>| = 1 within tol."""
        self.check_compatible(other)
        return bool(abs(np.vdot(self.rep, other.rep)) >= 1.0 - tol)

    def check_compatible(self, other: "ProjectivePoint") -> None:
        if self.variant != other.variant or self.dim != other.dim:
            raise DimensionMismatch(
                f"incompatible points: {self.variant}/{self.dim} vs "
                f"{other.variant}/{other.dim}"
            )


def vw_embed_complex(p: ProjectivePoint) -> SelfAdjointMatrix:
    """Embed [z] as the rank-one Hermitian projector z z* onto its line.

    The image has unit trace and is idempotent.
    """
    if p.variant != "complex":
        raise DimensionMismatch("complex-variant point required")
    return SelfAdjointMatrix(np.outer(p.rep, p.rep.conj()), variant="complex")


def vw_embed_real(p: ProjectivePoint) -> SelfAdjointMatrix:
    """Embed an axis [x] as the symmetric projector x x^T onto it."""
    if p.variant != "real":
        raise DimensionMismatch("real-variant point required")
    return SelfAdjointMatrix(np.outer(p.rep, p.rep), variant="real")


def affine_coords(p: ProjectivePoint) -> np.ndarray:
    """Affine chart coordinates w_i = z_i / z_last on the chart z_last != 0.

    Rescaling the representative by a unit scalar leaves the ratios
    unchanged, so the coordinates depend on the projective point alone.

    Raises
    ------
    OutsideChart
        If the last homogeneous coordinate has modulus <= 1e-10.
    """
    if p.variant != "complex":
        raise DimensionMismatch("affine coordinates are defined for the complex variant")
    last = p.rep[-1]
    if abs(last) <= AFFINE_CHART_TOL:
        raise OutsideChart("last homogeneous coordinate below chart threshold")
    return p.rep[:-1] / last


def projective_distance(p: ProjectivePoint, q: ProjectivePoint) -> float:
    """Chord distance sqrt(2 - 2 |<p, q>|^2).

    Equals the Frobenius distance between the embedded projectors; zero
    exactly when the points are projectively equal.
    """
    p.check_compatible(q)
    overlap = min(abs(np.vdot(p.rep, q.rep)) ** 2, 1.0)
    return float(np.sqrt(max(0.0, 2.0 - 2.0 * overlap)))


def orthocomplement_basis(v: np.ndarray) -> np.ndarray:
    """Deterministic orthonormal basis of the orthogonal complement of a unit vector.

    Columns of the returned (d, d-1) matrix are the trailing columns of the
    Householder reflection mapping ``v`` onto the first coordinate axis,
    canonically phased.  Any other orthonormal completion differs from this
    one by a unitary mixing on the right.
    """
    v = np.asarray(v)
    d = int(v.shape[0])
    if v.ndim != 1 or d < 2:
        raise InvalidDimension("need a vector of length >= 2")
    pivot = v[0]
    if abs(pivot) > 0:
        alpha = pivot / abs(pivot)
    else:
        alpha = 1.0 + 0j if np.iscomplexobj(v) else 1.0
    u = np.array(v)
    u[0] = u[0] + alpha  # same-phase shift: no cancellation, |u| > 0 always
    scale = 2.0 / float(np.vdot(u, u).real)
    basis = np.eye(d, dtype=u.dtype)[:, 1:] - np.outer(u, scale * u.conj()[1:])
    for j in range(d - 1):
        basis[:, j] = canonical_phase(basis[:, j])
    return basis
