"""Health check endpoint."""

from fastapi import APIRouter

from toa_correspondence import __version__
from toa_correspondence.models.responses import HealthResponse
from toa_correspondence.services.pipeline_service import get_pipeline_service

router = APIRouter(tags=["Health"])


@router.get(
    "/health",
    response_model=HealthResponse,
    summary="Health Check",
    description="Check that the engines are loaded and report cache usage.",
)
async def health_check() -> HealthResponse:
    """
    Health check endpoint.

    Reports the API itself and the pipeline cache counters.
    """
    components: dict[str, dict[str, object]] = {}
    components["api"] = {"status": "up"}
    components["pipeline"] = {"status": "up", **get_pipeline_service().cache_info()}

    return HealthResponse(
        status="healthy",
        version=__version__,
        components=components,
    )


@router.get(
    "/",
    summary="Root",
    description="API root endpoint with basic info.",
)
async def root() -> dict[str, str]:
    """Root endpoint with API info."""
    return {
        "name": "Time-of-Arrival Correspondence API",
        "version": __version__,
        "documentation": "/docs",
        "health": "/health",
    }
