"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the function."""


class ConvergenceError(ArithmeticError):
    """A series failed to reach its error budget within the iteration cap."""


class HypothesisViolation(ValueError):
    """A theorem hypothesis (decreasing weights, parameter condition) fails."""


class NoRootError(RuntimeError):
    """The radius functional stays negative on the whole sampled interval."""


class TruncationError(ArithmeticError):
    """A truncated coefficient model cannot certify its neglected tail."""
