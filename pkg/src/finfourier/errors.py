"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Invalid degree, family parameter or argument."""


class DomainError(ParameterError):
    """Argument outside the region where a formula is numerically usable."""


class EvaluationError(ArithmeticError):
    """A numerical procedure did not converge.

    The partial value and an error estimate are kept so callers can still
    report something useful.
    """

    def __init__(self, message, partial=None, estimate=None):
        super().__init__(message)
        self.partial = partial
        self.estimate = estimate
