"""Fréchet-function extremizers: extrinsic means and antimeans.

The weighted average of the embedded projectors of a sample (its moment
matrix, a trace-one PSD self-adjoint matrix) determines both extremizers of
the Fréchet function under the chord distance: the mean is the eigenline of
the largest eigenvalue and the antimean the eigenline of the smallest one,
each provided that eigenvalue is simple.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    DomainError,
    NonUniqueAntimean,
    NonUniqueMean,
)
from .geometry import ProjectivePoint
from .linalg import SelfAdjointMatrix, SpectralDecomposition, spectral_decompose

# Resolution below which a smallest eigenvalue counts as zero for the
# positivity half of the nonfocality flags.
POSITIVITY_TOL = 1e-12

DEFAULT_GAP_TOL = 1e-9


def _checked_weights(weights, n: int) -> np.ndarray:
    if weights is None:
        w = np.full(n, 1.0 / n)
    else:
        w = np.asarray(weights, dtype=np.float64).copy()
        if w.ndim != 1 or w.shape[0] != n:
            raise DimensionMismatch("one weight per sample point required")
        if np.any(w < 0):
            raise DomainError("weights must be nonnegative")
        if abs(float(w.sum()) - 1.0) > 1e-12:
            raise DomainError("weights must sum to one")
    w.setflags(write=False)
    return w


class SampleOnProjectiveSpace:
    """Weighted sample of points on one projective space.

    Weights default to uniform and must be nonnegative and sum to one, which
    makes a population with finite support just another sample.  Reweighting
    or resampling therefore reuses the same code paths.
    """

    __slots__ = ("matrix", "weights", "variant")

    def __init__(self, points, weights=None):
        points = list(points)
        if len(points) < 1:
            raise DomainError("empty sample")
        head = points[0]
        for other in points[1:]:
            head.check_compatible(other)
        matrix = np.stack([p.rep for p in points])
        matrix.setflags(write=False)
        self.matrix = matrix
        self.weights = _checked_weights(weights, len(points))
        self.variant = head.variant

    @classmethod
    def _from_rows(cls, matrix: np.ndarray, variant: str, weights=None):
        """Internal fast path for resampling: rows are trusted unit vectors."""
        obj = cls.__new__(cls)
        obj.matrix = matrix
        obj.weights = _checked_weights(weights, matrix.shape[0])
        obj.variant = variant
        return obj

    @property
    def n(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[1])

    def point(self, r: int) -> ProjectivePoint:
        return ProjectivePoint(self.matrix[r])


@dataclass(frozen=True)
class MomentMatrix:
    """Weighted average of embedded projectors together with its spectrum."""

    matrix: SelfAdjointMatrix
    spectral: SpectralDecomposition

    @property
    def trace_square(self) -> float:
        return float(np.sum(self.spectral.eigenvalues**2))


def _pairwise_sum(terms: np.ndarray) -> np.ndarray:
    """Fixed-tree pairwise reduction along axis 0; bit-stable under chunking."""
    block = terms
    while block.shape[0] > 1:
        m = block.shape[0]
        even = m - (m % 2)
        paired = block[0:even:2] + block[1:even:2]
        if m % 2:
            paired = np.concatenate([paired, block[even:]], axis=0)
        block = paired
    return block[0]


def moment_matrix(s: SampleOnProjectiveSpace) -> MomentMatrix:
    """Weighted sum of rank-one projectors of the sample points.

    The result is PSD with unit trace.  Accumulation uses a fixed pairwise
    reduction tree so the entries are bit-identical however the summation is
    chunked.
    """
    z = s.matrix
    outers = z[:, :, None] * z.conj()[:, None, :]
    total = _pairwise_sum(outers * s.weights[:, None, None])
    mat = SelfAdjointMatrix(total, variant=s.variant)
    return MomentMatrix(matrix=mat, spectral=spectral_decompose(mat))


def frechet_value(
    s: SampleOnProjectiveSpace,
    p: ProjectivePoint,
    moment: MomentMatrix | None = None,
) -> float:
    """Squared embedding distance from the candidate's projector to the
    sample's averaged projector: trace(A^2) + 1 - 2 <p, A p>.

    This differs from the weighted average of squared chord distances to the
    individual sample points by the constant 1 - trace(A^2) (the within-
    sample spread), so both have the same extremizers; this normalization is
    the one reported throughout.
    """
    if p.variant != s.variant or p.dim != s.dim:
        raise DimensionMismatch("candidate point and sample live on different spaces")
    if moment is None:
        moment = moment_matrix(s)
    quad = float(np.real(np.vdot(p.rep, moment.matrix.entries @ p.rep)))
    return moment.trace_square + 1.0 - 2.0 * quad


@dataclass(frozen=True)
class ExtremizerResult:
    """A unique Fréchet extremizer with its spectral context.

    ``gap`` is the distance from the extremal eigenvalue to its nearest
    neighbor and is positive for every returned result.
    """

    point: ProjectivePoint
    eigenvalue: float
    gap: float
    frechet_value: float
    kind: str


def _cluster_low(vals: np.ndarray, gap_tol: float) -> np.ndarray:
    return vals[vals - vals[0] <= gap_tol]


def _cluster_high(vals: np.ndarray, gap_tol: float) -> np.ndarray:
    return vals[vals[-1] - vals <= gap_tol]


def extrinsic_antimean(
    s: SampleOnProjectiveSpace,
    gap_tol: float = DEFAULT_GAP_TOL,
    moment: MomentMatrix | None = None,
) -> ExtremizerResult:
    """Maximizer of the Fréchet function: the bottom eigenline of the moment matrix.

    Raises
    ------
    NonUniqueAntimean
        If the smallest eigenvalue is within ``gap_tol`` of the next one; the
        antimean set then has more than one point and the eigenvalue cluster
        is attached to the exception.
    """
    if not gap_tol > 0:
        raise DomainError("gap_tol must be positive")
    if moment is None:
        moment = moment_matrix(s)
    sd = moment.spectral
    cluster = _cluster_low(sd.eigenvalues, gap_tol)
    if cluster.shape[0] > 1:
        raise NonUniqueAntimean(
            f"smallest eigenvalue has multiplicity {cluster.shape[0]} at gap_tol={gap_tol:g}",
            cluster=cluster,
        )
    lam = float(sd.eigenvalues[0])
    return ExtremizerResult(
        point=ProjectivePoint(sd.eigenvectors[:, 0]),
        eigenvalue=lam,
        gap=sd.min_gap,
        frechet_value=moment.trace_square + 1.0 - 2.0 * lam,
        kind="antimean",
    )


def extrinsic_mean(
    s: SampleOnProjectiveSpace,
    gap_tol: float = DEFAULT_GAP_TOL,
    moment: MomentMatrix | None = None,
) -> ExtremizerResult:
    """Minimizer of the Fréchet function: the top eigenline of the moment matrix.

    Mirror of :func:`extrinsic_antimean`; raises :class:`NonUniqueMean` on a
    top-eigenvalue tie.
    """
    if not gap_tol > 0:
        raise DomainError("gap_tol must be positive")
    if moment is None:
        moment = moment_matrix(s)
    sd = moment.spectral
    cluster = _cluster_high(sd.eigenvalues, gap_tol)
    if cluster.shape[0] > 1:
        raise NonUniqueMean(
            f"largest eigenvalue has multiplicity {cluster.shape[0]} at gap_tol={gap_tol:g}",
            cluster=cluster,
        )
    lam = float(sd.eigenvalues[-1])
    return ExtremizerResult(
        point=ProjectivePoint(sd.eigenvectors[:, -1]),
        eigenvalue=lam,
        gap=sd.max_gap_top,
        frechet_value=moment.trace_square + 1.0 - 2.0 * lam,
        kind="mean",
    )


@dataclass(frozen=True)
class NonfocalityReport:
    """Spectral diagnostics for uniqueness of both extremizers.

    ``alpha_vw_nonfocal`` asks the smallest eigenvalue to be positive and
    simple (antimean side); ``vw_nonfocal`` asks the largest eigenvalue to be
    simple (mean side).  Multiplicities count eigenvalues within ``gap_tol``
    of the respective end.
    """

    eigenvalues: tuple
    lambda_min: float
    bottom_gap: float
    top_gap: float
    bottom_multiplicity: int
    top_multiplicity: int
    alpha_vw_nonfocal: bool
    vw_nonfocal: bool
    gap_tol: float


def nonfocality_report(
    s: SampleOnProjectiveSpace,
    gap_tol: float = DEFAULT_GAP_TOL,
    moment: MomentMatrix | None = None,
) -> NonfocalityReport:
    """Eigenvalue-end diagnostics deciding whether each extremizer is unique."""
    if not gap_tol > 0:
        raise DomainError("gap_tol must be positive")
    if moment is None:
        moment = moment_matrix(s)
    vals = moment.spectral.eigenvalues
    bottom = int(_cluster_low(vals, gap_tol).shape[0])
    top = int(_cluster_high(vals, gap_tol).shape[0])
    lam_min = float(vals[0])
    return NonfocalityReport(
        eigenvalues=tuple(float(v) for v in vals),
        lambda_min=lam_min,
        bottom_gap=moment.spectral.min_gap,
        top_gap=moment.spectral.max_gap_top,
        bottom_multiplicity=bottom,
        top_multiplicity=top,
        alpha_vw_nonfocal=bool(bottom == 1 and lam_min > POSITIVITY_TOL),
        vw_nonfocal=bool(top == 1),
        gap_tol=gap_tol,
    )
