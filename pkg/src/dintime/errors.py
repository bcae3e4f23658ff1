"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the region where an operation is defined."""


class NonPositiveTimeError(DomainError):
    pass


class FrameSingularError(DomainError):
    """The tomographic frame violates mu * (mu * t + nu) > 0, or needs nu != 0."""


class QuadratureError(RuntimeError):
    """The requested accuracy was not reached within the segment budget.

    The best available estimate is attached as ``best`` (an ``OscIntegralResult``).
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class NonRealResultError(RuntimeError):
    """A quantity that must be real came out with a significant imaginary part."""


class DegenerateNodesError(ValueError):
    """Extrapolation nodes are repeated or too few."""
