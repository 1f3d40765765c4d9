"""Renders engine errors as JSON envelopes for the HTTP surface."""

import logging

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from toa_correspondence.errors.exceptions import InvalidRequestError, ToaError
from toa_correspondence.models.responses import ErrorDetail, ErrorResponse

logger = logging.getLogger(__name__)


def error_response(exc: ToaError) -> JSONResponse:
    """The envelope carries the same code and exit status the CLI reports."""
    detail = ErrorDetail(
        code=exc.error_code,
        family=exc.family,
        message=exc.message,
        exit_code=exc.exit_code,
        details=exc.details or None,
    )
    return JSONResponse(
        status_code=exc.status_code,
        content=ErrorResponse(error=detail).model_dump(mode="json"),
    )


async def toa_exception_handler(request: Request, exc: ToaError) -> JSONResponse:
    logger.warning(
        "%s %s failed: %s - %s",
        request.method,
        request.url.path,
        exc.error_code,
        exc.message,
        extra={"details": exc.details},
    )
    return error_response(exc)


async def validation_exception_handler(
    request: Request, exc: RequestValidationError
) -> JSONResponse:
    """Model validation failures become an input error like any malformed potential."""
    errors = [
        {
            "field": ".".join(str(x) for x in error["loc"]),
            "message": error["msg"],
            "type": error["type"],
        }
        for error in exc.errors()
    ]
    return await toa_exception_handler(request, InvalidRequestError(details={"errors": errors}))


async def generic_exception_handler(request: Request, exc: Exception) -> JSONResponse:
    logger.exception("Unhandled exception on %s %s", request.method, request.url.path)
    return error_response(ToaError(message="An unexpected error occurred"))


def register_exception_handlers(app: FastAPI) -> None:
    """Register all exception handlers with the FastAPI app."""
    app.add_exception_handler(ToaError, toa_exception_handler)  # type: ignore[arg-type]
    app.add_exception_handler(
        RequestValidationError,
        validation_exception_handler,  # type: ignore[arg-type]
    )
    app.add_exception_handler(Exception, generic_exception_handler)
