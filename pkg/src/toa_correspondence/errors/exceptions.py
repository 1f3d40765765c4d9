"""Custom exception hierarchy for the time-of-arrival engines."""

from typing import Any


class ToaError(Exception):
    """Base exception for all engine errors."""

    status_code: int = 500
    exit_code: int = 1
    family: str = "internal"
    error_code: str = "INTERNAL_ERROR"
    message: str = "An internal error occurred"

    def __init__(
        self,
        message: str | None = None,
        details: dict[str, Any] | None = None,
    ):
        self.message = message or self.__class__.message
        self.details = details or {}
        super().__init__(self.message)


# Algebra errors


class AlgebraError(ToaError):
    """Base series-algebra error."""

    status_code = 422
    family = "algebra"
    error_code = "ALGEBRA_ERROR"
    message = "Series operation failed"


class SpaceMismatchError(AlgebraError):
    """Operands live in different spaces (phase vs kernel)."""

    error_code = "SPACE_MISMATCH"
    message = "Series belong to different spaces"

    def __init__(self, left: str, right: str):
        super().__init__(
            message=f"Cannot combine a {left} series with a {right} series",
            details={"left": left, "right": right},
        )


class ExponentDomainError(AlgebraError):
    """A monomial would carry a negative exponent where only ħ may."""

    error_code = "EXPONENT_DOMAIN"
    message = "Negative exponent outside the ħ slot"


class SingularEvaluationError(AlgebraError):
    """Numeric evaluation hit a pole or a missing value."""

    error_code = "SINGULAR_EVALUATION"
    message = "Series cannot be evaluated at this point"


# Input errors (exit 2)


class InputError(ToaError):
    """Base invalid-input error."""

    status_code = 400
    exit_code = 2
    family = "input"
    error_code = "INVALID_INPUT"
    message = "Invalid input"


class PotentialParseError(InputError):
    """Potential text does not follow the grammar."""

    error_code = "POTENTIAL_PARSE_ERROR"
    message = "Malformed potential"

    def __init__(self, text: str, reason: str):
        super().__init__(
            message=f"Cannot parse potential {text!r}: {reason}",
            details={"potential": text, "reason": reason},
        )


class InvalidOrderError(InputError):
    """Truncation order is negative, odd where it must be even, or too large."""

    error_code = "INVALID_ORDER"
    message = "Invalid truncation order"

    def __init__(self, order: int, reason: str):
        super().__init__(
            message=f"Invalid order {order}: {reason}",
            details={"order": order, "reason": reason},
        )


class UnknownSystemError(InputError):
    """Benchmark system tag is not recognised."""

    error_code = "UNKNOWN_SYSTEM"
    message = "Unknown benchmark system"


class InvalidRequestError(InputError):
    """A request body or query failed model validation."""

    error_code = "VALIDATION_ERROR"
    message = "Request validation failed"


# Transform errors


class TransformError(ToaError):
    """Base phase-space transform error."""

    status_code = 422
    family = "transform"
    error_code = "TRANSFORM_ERROR"
    message = "Transform failed"


class ConventionError(TransformError):
    """Kernel term with odd v power cannot give a real transform."""

    error_code = "ODD_V_EXPONENT"
    message = "Kernel terms must have even v exponents"


class UnsupportedObservableError(TransformError):
    """Phase series is not a time-of-arrival series."""

    error_code = "UNSUPPORTED_OBSERVABLE"
    message = "Only odd inverse powers of p are supported"


class GradingViolationError(TransformError):
    """A transform produced a negative power of ħ."""

    error_code = "HBAR_GRADING_VIOLATION"
    message = "Negative power of ħ in a phase-space series"


# Numeric errors


class NumericError(ToaError):
    """Base floating-point validation error."""

    status_code = 422
    family = "numeric"
    error_code = "NUMERIC_ERROR"
    message = "Numeric evaluation failed"


class UnreachableError(NumericError):
    """The arrival point lies behind a classically forbidden region."""

    error_code = "UNREACHABLE"
    message = "Arrival point is not classically accessible"


class MathDomainError(NumericError):
    """Closed form evaluated outside its domain."""

    error_code = "MATH_DOMAIN"
    message = "Argument outside the closed-form domain"


class QuadratureBudgetError(NumericError):
    """Adaptive quadrature did not converge within its budget."""

    error_code = "QUADRATURE_BUDGET"
    message = "Quadrature did not converge"


class DegenerateRecurrenceError(NumericError):
    """A recurrence divisor vanished inside its domain."""

    error_code = "DEGENERATE_RECURRENCE"
    message = "Recurrence divisor vanished"


# Consistency errors (exit 3)


class ConsistencyError(ToaError):
    """An internal cross-check between pipelines failed."""

    status_code = 409
    exit_code = 3
    family = "consistency"
    error_code = "CONSISTENCY_FAILURE"
    message = "Internal consistency check failed"
