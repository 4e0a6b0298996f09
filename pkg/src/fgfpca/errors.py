"""Exception hierarchy shared across the package."""


class FGFPCAError(Exception):
    """Base class for all package-specific errors."""


class InvalidGrid(FGFPCAError):
    """Grid construction arguments are inconsistent or degenerate."""


class ModelFormatError(FGFPCAError):
    """Serialized model is malformed, truncated, or version-incompatible."""


class InvalidBinWidth(FGFPCAError):
    """Requested bin width is outside the valid range for the grid."""


class InvalidOutcome(FGFPCAError):
    """Outcome values are not valid for the declared family."""


class InsufficientSubjects(FGFPCAError):
    """Too few subjects for the requested computation."""


class AsymmetricCovariance(FGFPCAError):
    """Covariance input is not symmetric within tolerance."""


class NoVariation(FGFPCAError):
    """Covariance carries no positive eigenvalue; nothing to decompose."""


class InvalidBasis(FGFPCAError):
    """Spline basis size is outside the supported range."""


class ConvergenceError(FGFPCAError):
    """An iterative fit diverged; the attached trace shows the objective path."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = list(trace) if trace is not None else []


class DimensionMismatch(FGFPCAError):
    """Array shapes are inconsistent with the model or with each other."""


class SingularPrecision(FGFPCAError):
    """Score precision matrix is singular; intervals cannot be formed."""


class UndefinedAUC(FGFPCAError):
    """AUC is undefined because the window holds a single outcome class."""


class InvalidLag(FGFPCAError):
    """Lag count exceeds the observed history length."""


class InsufficientHistory(FGFPCAError):
    """Partial track is shorter than the model's cutoff index."""


class GridMismatch(FGFPCAError):
    """Data grid does not match the model grid."""
