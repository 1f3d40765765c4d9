"""FastAPI application entry point."""

import logging
from collections.abc import AsyncIterator
from contextlib import asynccontextmanager

from fastapi import FastAPI

from toa_correspondence import __version__
from toa_correspondence.config import configure_logging, get_settings
from toa_correspondence.errors.handlers import register_exception_handlers
from toa_correspondence.routes import health_router, pipeline_router

logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI) -> AsyncIterator[None]:
    """Configure logging on startup."""
    settings = get_settings()
    configure_logging(settings.log_level)
    logger.info(
        "Starting time-of-arrival API v%s in %s mode (max order %d)",
        __version__,
        settings.env.value,
        settings.max_order,
    )

    yield

    logger.info("Shutting down time-of-arrival API")


def create_app() -> FastAPI:
    """Create and configure the FastAPI application."""
    settings = get_settings()

    app = FastAPI(
        title="Time-of-Arrival Correspondence API",
        description=(
            "Exact series engines for quantum time-of-arrival kernels and classical "
            "local times of arrival.\n\n"
            "## Pipelines\n"
            "- Classical local series from the arrival-time recurrence\n"
            "- Time kernel from its hyperbolic equation in (u, v)\n"
            "- T_ħ transform and Weyl quantization between the two\n"
            "- Numeric oracles: quadrature, closed forms, Poisson bracket\n\n"
            "All symbolic coefficients are exact rationals serialized as `num/den`."
        ),
        version=__version__,
        lifespan=lifespan,
        docs_url="/docs",
        redoc_url="/redoc",
    )

    register_exception_handlers(app)

    app.include_router(health_router)
    app.include_router(pipeline_router, prefix=settings.api_prefix)

    return app


app = create_app()


if __name__ == "__main__":
    import uvicorn

    settings = get_settings()
    uvicorn.run(
        "toa_correspondence.main:app",
        host=settings.api_host,
        port=settings.api_port,
        reload=settings.env.value == "development",
    )
