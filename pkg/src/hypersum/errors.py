"""Exception hierarchy shared by every module in the package."""


class HypersumError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(HypersumError):
    """Arguments fall outside the mathematical domain of the operation."""


class NonConvergent(HypersumError):
    """A series hit its term cap before meeting the tolerance."""


class NotConvergent(HypersumError):
    """The requested sum is divergent for these parameters."""


class SlowConvergence(HypersumError):
    """A convergent sum failed to settle within the term budget."""


class QuadratureFailure(HypersumError):
    """Adaptive quadrature could not reach the requested accuracy."""


class RootFindFailure(HypersumError):
    """Bracketed root-finding failed to meet the residual tolerance."""


class InsufficientData(HypersumError):
    """Not enough observations to form valid goodness-of-fit cells."""
