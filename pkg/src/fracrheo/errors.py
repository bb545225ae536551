"""Exception hierarchy shared by all fracrheo modules."""


class FracRheoError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgumentError(FracRheoError, ValueError):
    """A scalar argument or field violates its stated domain."""


class DimensionMismatchError(FracRheoError, ValueError):
    """Two sampled objects live on incompatible grids."""


class UnsupportedSamplingError(FracRheoError):
    """The loading program cannot be realised as grid samples (Dirac impulse)."""


class UnsupportedOrderError(FracRheoError, ValueError):
    """Differentiation order outside the supported range."""


class SingularityError(FracRheoError):
    """An operation would produce a non-integrable power singularity."""


class UnrealizableLoadError(FracRheoError):
    """The load cannot physically be applied to the model (strain impulse on a spring-pot)."""


class UnsupportedPairingError(FracRheoError):
    """The (model, load quantity) combination is outside the supported catalog."""


class AccuracyLossError(FracRheoError):
    """A special-function evaluation cannot reach its accuracy target."""


class UnsupportedForcingError(FracRheoError):
    """The forcing contains power terms the Green's-function solver cannot integrate."""


class InvalidProblemError(FracRheoError, ValueError):
    """A fractional differential equation problem violates its invariants."""
