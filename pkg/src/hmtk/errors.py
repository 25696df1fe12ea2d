class HMTKError(Exception):
    """Base class for all toolkit errors."""


class DomainError(HMTKError, ValueError):
    """A point, window or parameter lies outside the admissible domain."""


class PreconditionError(HMTKError, ValueError):
    """An operation was called on an input it is not defined for."""


class ConvergenceError(HMTKError, ArithmeticError):
    """Adaptive quadrature did not reach the requested tolerance.

    ``iterates`` holds the last two estimates and ``achieved`` the last
    error estimate.
    """

    def __init__(self, message, iterates=(), achieved=float("nan")):
        super().__init__(message)
        self.iterates = tuple(iterates)
        self.achieved = achieved


class FieldError(HMTKError, ArithmeticError):
    """A scalar field returned NaN; ``location`` is the offending point."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location
