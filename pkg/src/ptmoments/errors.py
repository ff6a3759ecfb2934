"""Exception types shared across the package."""


class ValidationError(ValueError):
    """An input state, parameter, or file failed validation."""


class NumericsError(ArithmeticError):
    """An internal numerical cross-check failed."""
