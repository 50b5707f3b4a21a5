class DomainError(ValueError):
    """A point lies outside the domain of the map being evaluated."""


class ParameterError(ValueError):
    """Invalid parameter (K < 1, R <= 1, |mu| >= 1, bad grid, ...)."""


class SolverError(RuntimeError):
    def __init__(self, message, residual=None, iterations=None):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class AccuracyWarning(UserWarning):
    """Input is close enough to a numerical limit that results may degrade."""
