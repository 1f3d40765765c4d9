"""Standard API response models."""

from datetime import datetime, timezone
from typing import Any

from pydantic import BaseModel, Field

UTC = timezone.utc


class ErrorDetail(BaseModel):
    """Detailed error information."""

    code: str = Field(..., description="Machine-readable error code")
    family: str = Field(..., description="Error family: input, algebra, transform, numeric, ...")
    message: str = Field(..., description="Human-readable error message")
    exit_code: int = Field(..., description="Exit status the CLI returns for the same error")
    details: dict[str, Any] | None = Field(default=None, description="Additional error details")
    timestamp: datetime = Field(default_factory=lambda: datetime.now(UTC))


class ErrorResponse(BaseModel):
    """Standard error response format."""

    error: ErrorDetail


class HealthResponse(BaseModel):
    """Health check response."""

    status: str = Field(..., description="Overall health status")
    version: str = Field(..., description="API version")
    components: dict[str, dict[str, Any]] = Field(
        default_factory=dict, description="Component health status"
    )
    timestamp: datetime = Field(default_factory=lambda: datetime.now(UTC))
