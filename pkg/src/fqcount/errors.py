"""Exception types shared across the package."""


class FqError(Exception):
    """Base class for all fqcount errors."""


class NonPrime(FqError):
    pass


class Reducible(FqError):
    pass


class DegreeMismatch(FqError):
    pass


class DivisionByZero(FqError, ZeroDivisionError):
    pass


class ZeroPolynomial(FqError):
    pass


class ConstantPolynomial(FqError):
    pass


class BadBase(FqError):
    pass


class BadIndexSet(FqError):
    pass


class ArityMismatch(FqError):
    pass


class ZeroCoefficient(FqError):
    pass


class BudgetExceeded(FqError):
    """Raised when a count or search would exceed its evaluation budget."""

    def __init__(self, required: int, budget: int, what: str = "evaluations"):
        self.required = required
        self.budget = budget
        super().__init__(f"needs {required} {what}, budget is {budget}")


class CapExceeded(FqError):
    pass


class PreconditionViolated(FqError):
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(reason)


class PrecisionInsufficient(FqError):
    pass


class InternalInconsistency(FqError):
    """Two independent computations of the same quantity disagreed.

    This is never a valid outcome; it signals a bug in this package.
    """


class ParseError(FqError):
    def __init__(self, message: str, field: str | None = None):
        self.field = field
        super().__init__(message if field is None else f"{field}: {message}")
