"""Exception types shared across the package."""


class SingularityError(ValueError):
    """Input sits on (or too close to) a singular locus of a map, e.g. a
    rotation with trace -1 handed to an angle-extraction routine."""


class DomainError(ValueError):
    """Input lies outside the domain of definition of a map."""


class ConvergenceError(RuntimeError):
    """An iterative solver failed to reach its residual target."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual
