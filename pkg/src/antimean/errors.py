"""Exception hierarchy.

Every failure mode raised by this package derives from :class:`AntimeanError`.
The attached ``exit_code`` is the process status the command-line front end
returns for it: 2 for statistical or numerical degeneracy, 3 for input and
parse failures, 4 for invalid parameters.
"""


class AntimeanError(Exception):
    exit_code = 2


class NonConvergence(AntimeanError):
    """Jacobi sweeps exhausted before the off-diagonal mass met tolerance."""


class InvalidDimension(AntimeanError):
    """Matrix or vector shape outside the supported range."""


class DimensionMismatch(AntimeanError):
    """Operands live on different spaces (variant or dimension differ)."""


class DegenerateConfig(AntimeanError):
    """All landmarks coincide: the configuration carries no shape."""


class OutsideChart(AntimeanError):
    """Last homogeneous coordinate too small for affine coordinates."""


class NonUniqueExtremizer(AntimeanError):
    """The extremal eigenvalue is clustered: the extremizer set is not a point.

    ``cluster`` holds the offending eigenvalue cluster.
    """

    def __init__(self, message, cluster=()):
        super().__init__(message)
        self.cluster = tuple(float(x) for x in cluster)


class NonUniqueAntimean(NonUniqueExtremizer):
    pass


class NonUniqueMean(NonUniqueExtremizer):
    pass


class FocalSample(AntimeanError):
    """Bottom eigenvalue gap below tolerance: anticovariance undefined."""


class SingularAnticovariance(AntimeanError):
    """Anticovariance not invertible at the working relative cutoff."""


class AllResamplesDegenerate(AntimeanError):
    """Every bootstrap resample was skipped."""


class TooManyDegenerateResamples(AntimeanError):
    """More than 10% of bootstrap resamples were skipped."""


class ChartFailure(AntimeanError):
    """More than 10% of bootstrap replicates fall outside the affine chart."""


class ParseError(AntimeanError):
    """Input file could not be parsed; carries the 1-based line number."""

    exit_code = 3

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InconsistentColumns(ParseError):
    """Header or row does not follow the id,x1,y1,...,xk,yk layout."""


class DomainError(AntimeanError):
    """Parameter outside its documented domain."""

    exit_code = 4
