"""Exception hierarchy shared by all modules."""


class HardyShellError(Exception):
    """Base class for every computation error raised by the package."""


class ThresholdError(HardyShellError):
    """Evaluation requested at the degenerate threshold k = 0."""


class SingularMatchingError(HardyShellError):
    """The interface matching system is singular (e.g. kappa = 0 in the exponential basis)."""


class PoleError(HardyShellError):
    """Evaluation at (or numerically on top of) a zero of the Jost function."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class ContourError(HardyShellError):
    """Winding number along a contour is not an integer within tolerance."""


class NewtonError(HardyShellError):
    """Newton refinement failed to converge."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class SupportError(HardyShellError):
    """A bump support is not inside the declared half-line, or is under-resolved."""


class TruncationError(HardyShellError):
    """A sampled function does not decay inside its grid or cutoff."""


class DivergenceError(HardyShellError):
    """A Fourier-Laplace integral is evaluated where its integrand grows."""


class TailDominatedError(HardyShellError):
    """A line integral could not be closed: the tail estimate stays too large."""


class PreconditionError(HardyShellError):
    """An input violates a documented precondition."""


class WrongHalfPlaneError(HardyShellError):
    """A point or function lies in the wrong half-plane for the requested operation."""


class SemigroupDomainError(HardyShellError):
    """Negative time requested where only the forward semigroup is defined."""


class ConfigError(HardyShellError):
    """Invalid run configuration."""
