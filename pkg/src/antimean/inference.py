"""Inference for extrinsic antimeans: anticovariance, chi-square regions, bootstrap.

The sample antimean fluctuates in the tangent space of the projective space
at the true antimean.  Its tangential coordinates are asymptotically normal
with a covariance (the anticovariance) expressible from the moment matrix's
eigensystem, which yields a chi-square calibrated quadratic statistic, an
asymptotic confidence region, and pivotal and nonpivotal bootstrap analogues.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import (
    AllResamplesDegenerate,
    ChartFailure,
    DimensionMismatch,
    DomainError,
    FocalSample,
    NonUniqueAntimean,
    NonUniqueMean,
    OutsideChart,
    SingularAnticovariance,
    TooManyDegenerateResamples,
)
from .extremes import (
    DEFAULT_GAP_TOL,
    ExtremizerResult,
    MomentMatrix,
    SampleOnProjectiveSpace,
    extrinsic_antimean,
    extrinsic_mean,
    moment_matrix,
)
from .geometry import ProjectivePoint, affine_coords, orthocomplement_basis
from .linalg import SelfAdjointMatrix, spectral_decompose

# Relative eigenvalue cutoff below which an anticovariance is refused rather
# than pseudo-inverted (a pseudo-inverse would silently change the degrees of
# freedom of the statistic).
_INVERSION_RCOND = 1e-12


@dataclass(frozen=True)
class AnticovarianceMatrix:
    """Sample anticovariance of the antimean's tangential coordinates.

    ``entries`` is (d, d) self-adjoint with d = N - 1 (real case) or k - 2
    (complex case); ``basis`` holds the sample eigenvectors above the bottom
    one as columns, defining the tangential coordinates the entries refer to.
    ``sample_size`` is the number of sample points, needed to scale the
    quadratic statistic.
    """

    entries: np.ndarray
    basis: np.ndarray
    variant: str
    sample_size: int

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])


def _anticovariance(
    s: SampleOnProjectiveSpace,
    gap_tol: float,
    variant: str,
    moment: MomentMatrix | None,
) -> AnticovarianceMatrix:
    if s.variant != variant:
        raise DimensionMismatch(f"{variant}-variant sample required")
    if moment is None:
        moment = moment_matrix(s)
    sd = moment.spectral
    if sd.min_gap <= gap_tol:
        raise FocalSample(
            f"bottom eigenvalue gap {sd.min_gap:.3e} <= gap_tol {gap_tol:g}"
        )
    # coords[r, a] = <m_a, z_r>; the bottom eigenvector is column 0.
    coords = s.matrix @ sd.eigenvectors.conj()
    bottom_weight = s.weights * np.abs(coords[:, 0]) ** 2
    upper = coords[:, 1:]
    raw = (upper * bottom_weight[:, None]).T @ upper.conj()
    gaps = sd.eigenvalues[1:] - sd.eigenvalues[0]
    raw = raw / gaps[:, None] / gaps[None, :]
    entries = 0.5 * (raw + raw.conj().T)  # exact self-adjoint storage
    entries.setflags(write=False)
    return AnticovarianceMatrix(
        entries=entries,
        basis=sd.eigenvectors[:, 1:],
        variant=variant,
        sample_size=s.n,
    )


def anticovariance_real(
    s: SampleOnProjectiveSpace,
    gap_tol: float = DEFAULT_GAP_TOL,
    moment: MomentMatrix | None = None,
) -> AnticovarianceMatrix:
    """Anticovariance for axial samples on RP^{N-1}.

    With eigenvalues lam_1 <= ... <= lam_N of the moment matrix and unit
    eigenvectors m_a, the entries over a, b = 2, ..., N are

        S[a, b] = sum_r w_r (m_a . x_r)(m_b . x_r)(m_1 . x_r)^2
                  / ((lam_a - lam_1)(lam_b - lam_1)),

    uniform weights w_r = 1/n giving the usual 1/n normalization.  The matrix
    is PSD by construction.

    Raises
    ------
    FocalSample
        If the bottom eigenvalue gap is within ``gap_tol``.
    """
    return _anticovariance(s, gap_tol, "real", moment)


def anticovariance_complex(
    s: SampleOnProjectiveSpace,
    gap_tol: float = DEFAULT_GAP_TOL,
    moment: MomentMatrix | None = None,
) -> AnticovarianceMatrix:
    """Anticovariance for shape samples on CP^{k-2}, as a Hermitian matrix.

    Entries over a, b = 2, ..., k-1:

        S[a, b] = sum_r w_r (m_a . z_r)(m_b . z_r)* |m_1 . z_r|^2
                  / ((lam_a - lam_1)(lam_b - lam_1)).

    Conventions and failure modes match :func:`anticovariance_real`.
    """
    return _anticovariance(s, gap_tol, "complex", moment)


@dataclass(frozen=True)
class TStatistic:
    value: float
    dof: int


def _dof(variant: str, tangent_dim: int) -> int:
    return tangent_dim if variant == "real" else 2 * tangent_dim


def _eigh_small(mat: np.ndarray, variant: str):
    if mat.shape[0] == 1:
        return np.array([float(mat[0, 0].real)]), np.ones((1, 1), dtype=mat.dtype)
    sd = spectral_decompose(SelfAdjointMatrix(mat, variant=variant))
    return sd.eigenvalues, sd.eigenvectors


def t_statistic(
    center_sample_antimean: ExtremizerResult,
    anticov: AnticovarianceMatrix,
    hypothesis: ProjectivePoint,
    hypothesis_basis: np.ndarray | None = None,
) -> TStatistic:
    """Squared standardized tangential distance of the sample antimean from a
    hypothesized antimean.

    The sample antimean's coordinates are taken in an orthonormal basis of
    the hypothesis point's orthocomplement (a deterministic Householder
    completion unless ``hypothesis_basis`` supplies one, e.g. the eigenbasis
    of a hypothesized population moment matrix).  The anticovariance, which
    lives on the sample eigenbasis, is transported into that basis by the
    congruence W S W* with W[j, a] = <b_j, m_a> before inversion.  The value
    is therefore invariant, up to rounding, under unitary changes of either
    basis, under representative phases, and under simultaneous rotation of
    sample and hypothesis.

    In the complex case each tangential coordinate carries two real degrees
    of freedom while the Hermitian anticovariance estimates the full complex
    second moment, so the real quadratic form equals twice the complex
    sandwich; that factor is included, giving 2k - 4 degrees of freedom.  The
    real case has N - 1.

    Raises
    ------
    SingularAnticovariance
        If the transported anticovariance has an eigenvalue below 1e-12
        times its largest one.
    DimensionMismatch
        If the hypothesis lives on a different space than the sample data.
    """
    m = center_sample_antimean.point
    if hypothesis.variant != m.variant or hypothesis.dim != m.dim:
        raise DimensionMismatch("hypothesis and sample antimean live on different spaces")
    if anticov.basis.shape[0] != m.dim:
        raise DimensionMismatch("anticovariance basis does not match the ambient space")
    dof = _dof(anticov.variant, anticov.dim)
    if np.array_equal(hypothesis.rep, m.rep):
        return TStatistic(value=0.0, dof=dof)
    if hypothesis_basis is None:
        basis = orthocomplement_basis(hypothesis.rep)
    else:
        basis = np.asarray(hypothesis_basis)
        if basis.shape != (m.dim, anticov.dim):
            raise DimensionMismatch("hypothesis basis must be (ambient, ambient-1)")
        gram = basis.conj().T @ basis
        aligned = basis.conj().T @ hypothesis.rep
        if (
            float(np.max(np.abs(gram - np.eye(anticov.dim)))) > 1e-8
            or float(np.max(np.abs(aligned))) > 1e-8
        ):
            raise DomainError("hypothesis basis must be orthonormal and orthogonal to it")
    coords = basis.conj().T @ m.rep
    transport = basis.conj().T @ anticov.basis
    moved = transport @ anticov.entries @ transport.conj().T
    moved = 0.5 * (moved + moved.conj().T)
    vals, vecs = _eigh_small(moved, anticov.variant)
    top = float(vals[-1])
    if top <= 0.0 or float(vals[0]) <= _INVERSION_RCOND * top:
        raise SingularAnticovariance(
            "transported anticovariance below the relative inversion cutoff"
        )
    weighted = vecs @ ((vecs.conj().T @ coords) / vals)
    quad = max(0.0, float(np.real(np.vdot(coords, weighted))))
    scale = 2.0 if anticov.variant == "complex" else 1.0
    return TStatistic(value=scale * anticov.sample_size * quad, dof=dof)


def chi2_quantile(dof: int, prob: float) -> float:
    """Chi-square inverse CDF via the regularized incomplete gamma inverse."""
    if dof < 1:
        raise DomainError("dof must be at least 1")
    if not 0.0 < prob < 1.0:
        raise DomainError("prob must lie strictly between 0 and 1")
    return float(2.0 * special.gammaincinv(0.5 * dof, prob))


@dataclass(frozen=True)
class BootstrapDistribution:
    """Extremizers (and optionally statistic values) of kept resamples.

    ``replicate_indices`` records which of the ``resample_count`` replicates
    produced each entry; skipped replicates (tied eigenvalues, focal or
    singular resamples) are only counted.
    """

    resample_count: int
    extremizers: tuple
    replicate_indices: tuple
    t_values: tuple | None
    seed: int
    skipped: int
    kind: str


@dataclass(frozen=True)
class ConfidenceRegion:
    """Region {[v] : T([m], [v]) <= threshold} around the sample antimean."""

    center: ExtremizerResult
    anticov: AnticovarianceMatrix
    level: float
    threshold: float
    method: str
    bootstrap: BootstrapDistribution | None = None

    @property
    def dof(self) -> int:
        return _dof(self.anticov.variant, self.anticov.dim)

    def contains(self, point: ProjectivePoint) -> bool:
        """Membership test; a hypothesis whose transported anticovariance is
        uninvertible (essentially orthogonal tangent frames) counts as
        outside."""
        try:
            t = t_statistic(self.center, self.anticov, point)
        except SingularAnticovariance:
            return False
        return bool(t.value <= self.threshold)


def asymptotic_region(
    s: SampleOnProjectiveSpace,
    level: float,
    gap_tol: float = DEFAULT_GAP_TOL,
) -> ConfidenceRegion:
    """Large-sample confidence region with the chi-square quantile threshold."""
    if not 0.0 < level < 1.0:
        raise DomainError("level must lie strictly between 0 and 1")
    mm = moment_matrix(s)
    center = extrinsic_antimean(s, gap_tol, moment=mm)
    anticov = _anticovariance(s, gap_tol, s.variant, mm)
    threshold = chi2_quantile(_dof(s.variant, anticov.dim), level)
    return ConfidenceRegion(
        center=center,
        anticov=anticov,
        level=level,
        threshold=threshold,
        method="asymptotic",
    )


def _check_seed(seed) -> int:
    if not isinstance(seed, (int, np.integer)) or seed < 0:
        raise DomainError("seed must be a nonnegative integer")
    return int(seed)


def _replicate_rng(seed: int, replicate: int) -> np.random.Generator:
    # Generator derived from (seed, replicate index): output is independent
    # of scheduling and worker count.
    return np.random.default_rng([seed, replicate])


def _run_replicates(fn, count: int, workers: int) -> list:
    if workers <= 1:
        return [fn(r) for r in range(count)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(count)))


def bootstrap_nonpivotal(
    s: SampleOnProjectiveSpace,
    B: int,
    seed: int,
    kind: str,
    gap_tol: float = DEFAULT_GAP_TOL,
    workers: int = 1,
) -> BootstrapDistribution:
    """Extremizers of ``B`` with-replacement resamples of the sample.

    Resamples whose requested extremizer is not unique are skipped and
    counted.  Each replicate derives its generator from (seed, replicate
    index), so results are bit-identical for any worker count.

    Raises
    ------
    AllResamplesDegenerate
        If every resample is skipped.
    """
    if B < 1:
        raise DomainError("B must be at least 1")
    seed = _check_seed(seed)
    if kind == "mean":
        extract = extrinsic_mean
        skip = (NonUniqueMean,)
    elif kind == "antimean":
        extract = extrinsic_antimean
        skip = (NonUniqueAntimean,)
    else:
        raise DomainError("kind must be 'mean' or 'antimean'")
    n = s.n

    def run(r: int):
        idx = _replicate_rng(seed, r).integers(0, n, size=n)
        sub = SampleOnProjectiveSpace._from_rows(s.matrix[idx], s.variant)
        try:
            return r, extract(sub, gap_tol).point
        except skip:
            return r, None

    results = _run_replicates(run, B, workers)
    kept = [(r, p) for r, p in results if p is not None]
    if not kept:
        raise AllResamplesDegenerate(f"all {B} resamples had tied extremal eigenvalues")
    return BootstrapDistribution(
        resample_count=B,
        extremizers=tuple(p for _, p in kept),
        replicate_indices=tuple(r for r, _ in kept),
        t_values=None,
        seed=seed,
        skipped=B - len(kept),
        kind=kind,
    )


def _empirical_quantile(sorted_values, prob: float) -> float:
    # Type-1 (order statistic) quantile: deterministic and conservative.
    m = len(sorted_values)
    idx = max(1, math.ceil(prob * m - 1e-12))
    return float(sorted_values[min(idx, m) - 1])


def bootstrap_pivotal(
    s: SampleOnProjectiveSpace,
    B: int,
    seed: int,
    level: float,
    gap_tol: float = DEFAULT_GAP_TOL,
    workers: int = 1,
) -> ConfidenceRegion:
    """Confidence region whose threshold is the bootstrap quantile of the statistic.

    Each resample is reduced to its own antimean and anticovariance and the
    statistic is evaluated there against the full-sample antimean; the
    ``level`` empirical quantile of those values replaces the chi-square
    threshold.  Resamples with tied eigenvalues, a focal spectrum or a
    singular anticovariance are skipped.

    Raises
    ------
    TooManyDegenerateResamples
        If more than 10% of the resamples are skipped.
    """
    if B < 100:
        raise DomainError("pivotal bootstrap needs B >= 100")
    seed = _check_seed(seed)
    if not 0.0 < level < 1.0:
        raise DomainError("level must lie strictly between 0 and 1")
    mm = moment_matrix(s)
    center = extrinsic_antimean(s, gap_tol, moment=mm)
    anticov = _anticovariance(s, gap_tol, s.variant, mm)
    hypothesis = center.point
    n = s.n

    def run(r: int):
        idx = _replicate_rng(seed, r).integers(0, n, size=n)
        sub = SampleOnProjectiveSpace._from_rows(s.matrix[idx], s.variant)
        try:
            sub_mm = moment_matrix(sub)
            sub_center = extrinsic_antimean(sub, gap_tol, moment=sub_mm)
            sub_anticov = _anticovariance(sub, gap_tol, s.variant, sub_mm)
            t = t_statistic(sub_center, sub_anticov, hypothesis)
        except (NonUniqueAntimean, FocalSample, SingularAnticovariance):
            return r, None, None
        return r, sub_center.point, t.value

    results = _run_replicates(run, B, workers)
    kept = [(r, p, t) for r, p, t in results if t is not None]
    skipped = B - len(kept)
    if skipped > 0.10 * B:
        raise TooManyDegenerateResamples(
            f"{skipped} of {B} resamples were degenerate (limit is 10%)"
        )
    threshold = _empirical_quantile(sorted(t for _, _, t in kept), level)
    boot = BootstrapDistribution(
        resample_count=B,
        extremizers=tuple(p for _, p, _ in kept),
        replicate_indices=tuple(r for r, _, _ in kept),
        t_values=tuple(t for _, _, t in kept),
        seed=seed,
        skipped=skipped,
        kind="antimean",
    )
    return ConfidenceRegion(
        center=center,
        anticov=anticov,
        level=level,
        threshold=threshold,
        method="pivotal-bootstrap",
        bootstrap=boot,
    )


def _format_complex(z: complex) -> str:
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real:.4f} {sign} {abs(z.imag):.4f}i"


@dataclass(frozen=True)
class AffineConfidenceRectangles:
    """Simultaneous rectangles for the affine coordinates of the antimean.

    Each rectangle is reported by its two complex corners (lower-left and
    upper-right).  ``per_interval_level`` is the two-sided level each real
    interval was taken at after the Bonferroni split.
    """

    rectangles: tuple
    level: float
    per_interval_level: float
    used: int
    dropped: int

    def display(self) -> tuple:
        """Two-corner display strings, one per affine coordinate."""
        return tuple(
            f"[{_format_complex(lo)}   {_format_complex(hi)}]"
            for lo, hi in self.rectangles
        )


def simultaneous_affine_cis(
    boot: BootstrapDistribution, level: float
) -> AffineConfidenceRectangles:
    """Bonferroni-simultaneous empirical rectangles from bootstrap extremizers.

    The miscoverage 1 - level is split evenly over the k - 2 affine
    coordinates and the real/imaginary part pair of each, so every real
    interval is two-sided at level 1 - (1 - level)/(2(k-2)).  Replicates
    outside the affine chart are dropped and counted.

    Raises
    ------
    ChartFailure
        If more than 10% of the replicates fall outside the chart.
    """
    if not 0.0 < level < 1.0:
        raise DomainError("level must lie strictly between 0 and 1")
    if not boot.extremizers:
        raise AllResamplesDegenerate("bootstrap distribution is empty")
    head = boot.extremizers[0]
    if head.variant != "complex":
        raise DimensionMismatch("affine rectangles are defined for the complex variant")
    rows = []
    dropped = 0
    for point in boot.extremizers:
        try:
            rows.append(affine_coords(point))
        except OutsideChart:
            dropped += 1
    total = len(boot.extremizers)
    if dropped > 0.10 * total:
        raise ChartFailure(f"{dropped} of {total} replicates outside the affine chart")
    coords = np.stack(rows)
    d = coords.shape[1]
    beta = 1.0 - level
    per_interval = 1.0 - beta / (2.0 * d)
    p_lo = beta / (4.0 * d)
    p_hi = 1.0 - p_lo
    rectangles = []
    for i in range(d):
        re = np.sort(coords[:, i].real)
        im = np.sort(coords[:, i].imag)
        lo = complex(_empirical_quantile(re, p_lo), _empirical_quantile(im, p_lo))
        hi = complex(_empirical_quantile(re, p_hi), _empirical_quantile(im, p_hi))
        rectangles.append((lo, hi))
    return AffineConfidenceRectangles(
        rectangles=tuple(rectangles),
        level=level,
        per_interval_level=per_interval,
        used=len(rows),
        dropped=dropped,
    )
