"""Error handling module."""

from toa_correspondence.errors.exceptions import (
    AlgebraError,
    ConsistencyError,
    ConventionError,
    DegenerateRecurrenceError,
    ExponentDomainError,
    GradingViolationError,
    InputError,
    InvalidOrderError,
    InvalidRequestError,
    MathDomainError,
    NumericError,
    PotentialParseError,
    QuadratureBudgetError,
    SingularEvaluationError,
    SpaceMismatchError,
    ToaError,
    TransformError,
    UnknownSystemError,
    UnreachableError,
    UnsupportedObservableError,
)

__all__ = [
    "AlgebraError",
    "ConsistencyError",
    "ConventionError",
    "DegenerateRecurrenceError",
    "ExponentDomainError",
    "GradingViolationError",
    "InputError",
    "InvalidOrderError",
    "InvalidRequestError",
    "MathDomainError",
    "NumericError",
    "PotentialParseError",
    "QuadratureBudgetError",
    "SingularEvaluationError",
    "SpaceMismatchError",
    "ToaError",
    "TransformError",
    "UnknownSystemError",
    "UnreachableError",
    "UnsupportedObservableError",
]
