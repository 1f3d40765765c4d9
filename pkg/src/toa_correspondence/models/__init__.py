"""Pydantic models for the pipeline service."""

from toa_correspondence.models.pipeline import (
    CompareRequest,
    ComparisonResponse,
    KernelRequest,
    KernelResponse,
    LocalRequest,
    LocalToaResponse,
    NumericRequest,
    TableResponse,
    TransformRequest,
    TransformResponse,
    WeylRequest,
    WeylResponse,
)
from toa_correspondence.models.responses import ErrorDetail, ErrorResponse, HealthResponse

__all__ = [
    "CompareRequest",
    "ComparisonResponse",
    "ErrorDetail",
    "ErrorResponse",
    "HealthResponse",
    "KernelRequest",
    "KernelResponse",
    "LocalRequest",
    "LocalToaResponse",
    "NumericRequest",
    "TableResponse",
    "TransformRequest",
    "TransformResponse",
    "WeylRequest",
    "WeylResponse",
]
