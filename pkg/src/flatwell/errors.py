"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where the computation is defined."""


class ConvergenceError(ArithmeticError):
    """An iterative procedure failed to reach its requested tolerance."""
