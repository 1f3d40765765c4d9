"""API routes module."""

from toa_correspondence.routes.health import router as health_router
from toa_correspondence.routes.pipeline import router as pipeline_router

__all__ = ["health_router", "pipeline_router"]
