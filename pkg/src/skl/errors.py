"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class EvaluationError(ArithmeticError):
    """A target function produced a non-finite value where a finite one is required."""


class UsageError(Exception):
    """Invalid command-line flags or flag combinations."""
