"""Extrinsic mean and antimean statistics on real and complex projective spaces.

Planar landmark shapes enter through Helmert preshapes into CP^{k-2}; axial
data enters RP^{N-1} directly.  Under the projector embedding the Fréchet
function's extremizers are eigenlines of the sample moment matrix, and the
sample antimean admits anticovariance-based chi-square and bootstrap
confidence regions.
"""

from .errors import (
    AllResamplesDegenerate,
    AntimeanError,
    ChartFailure,
    DegenerateConfig,
    DimensionMismatch,
    DomainError,
    FocalSample,
    InconsistentColumns,
    InvalidDimension,
    NonConvergence,
    NonUniqueAntimean,
    NonUniqueExtremizer,
    NonUniqueMean,
    OutsideChart,
    ParseError,
    SingularAnticovariance,
    TooManyDegenerateResamples,
)
from .linalg import (
    SelfAdjointMatrix,
    SpectralDecomposition,
    canonical_phase,
    hermitian_psd_check,
    spectral_decompose,
)
from .geometry import (
    LandmarkConfig,
    HelmertSubmatrix,
    Preshape,
    ProjectivePoint,
    affine_coords,
    helmert_submatrix,
    orthocomplement_basis,
    projective_distance,
    to_preshape,
    vw_embed_complex,
    vw_embed_real,
)
from .extremes import (
    ExtremizerResult,
    MomentMatrix,
    NonfocalityReport,
    SampleOnProjectiveSpace,
    extrinsic_antimean,
    extrinsic_mean,
    frechet_value,
    moment_matrix,
    nonfocality_report,
)
from .inference import (
    AffineConfidenceRectangles,
    AnticovarianceMatrix,
    BootstrapDistribution,
    ConfidenceRegion,
    TStatistic,
    anticovariance_complex,
    anticovariance_real,
    asymptotic_region,
    bootstrap_nonpivotal,
    bootstrap_pivotal,
    chi2_quantile,
    simultaneous_affine_cis,
    t_statistic,
)
from .io import (
    Dataset,
    dataset_to_sample,
    dumps_json,
    read_landmarks,
    simulate_configs,
    write_landmarks,
)

__version__ = "0.1.0"

__all__ = [
    "AllResamplesDegenerate",
    "AntimeanError",
    "ChartFailure",
    "DegenerateConfig",
    "DimensionMismatch",
    "DomainError",
    "FocalSample",
    "InconsistentColumns",
    "InvalidDimension",
    "NonConvergence",
    "NonUniqueAntimean",
    "NonUniqueExtremizer",
    "NonUniqueMean",
    "OutsideChart",
    "ParseError",
    "SingularAnticovariance",
    "TooManyDegenerateResamples",
    "SelfAdjointMatrix",
    "SpectralDecomposition",
    "canonical_phase",
    "hermitian_psd_check",
    "spectral_decompose",
    "LandmarkConfig",
    "HelmertSubmatrix",
    "Preshape",
    "ProjectivePoint",
    "affine_coords",
    "helmert_submatrix",
    "orthocomplement_basis",
    "projective_distance",
    "to_preshape",
    "vw_embed_complex",
    "vw_embed_real",
    "ExtremizerResult",
    "MomentMatrix",
    "NonfocalityReport",
    "SampleOnProjectiveSpace",
    "extrinsic_antimean",
    "extrinsic_mean",
    "frechet_value",
    "moment_matrix",
    "nonfocality_report",
    "AffineConfidenceRectangles",
    "AnticovarianceMatrix",
    "BootstrapDistribution",
    "ConfidenceRegion",
    "TStatistic",
    "anticovariance_complex",
    "anticovariance_real",
    "asymptotic_region",
    "bootstrap_nonpivotal",
    "bootstrap_pivotal",
    "chi2_quantile",
    "simultaneous_affine_cis",
    "t_statistic",
    "Dataset",
    "dataset_to_sample",
    "dumps_json",
    "read_landmarks",
    "simulate_configs",
    "write_landmarks",
    "__version__",
]
