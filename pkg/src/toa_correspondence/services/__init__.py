"""Service layer."""

from toa_correspondence.services.pipeline_service import (
    PipelineService,
    get_pipeline_service,
    reset_pipeline_service,
)
from toa_correspondence.services.table_service import (
    TableService,
    get_table_service,
    reset_table_service,
)

__all__ = [
    "PipelineService",
    "TableService",
    "get_pipeline_service",
    "get_table_service",
    "reset_pipeline_service",
    "reset_table_service",
]
