"""Pipeline endpoints: local series, kernels, transforms, comparison and numerics."""

from fastapi import APIRouter, Depends

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
from toa_correspondence.physics.kernel import kernel_to_qq
from toa_correspondence.physics.numeric import NumericRow, PhasePoint
from toa_correspondence.services.pipeline_service import PipelineService, get_pipeline_service
from toa_correspondence.services.table_service import TableService, get_table_service

router = APIRouter(tags=["Pipelines"])

# Engine work is CPU-bound; plain ``def`` handlers run in the threadpool.


@router.post(
    "/local",
    response_model=LocalToaResponse,
    summary="Local Time of Arrival",
    description="Expand the classical local time-of-arrival series t_x to depth K.",
)
def local_series(
    request: LocalRequest,
    service: PipelineService = Depends(get_pipeline_service),
) -> LocalToaResponse:
    result = service.local(request.potential, request.order, request.x)
    return LocalToaResponse.from_result(request.potential, result, request.negate)


@router.post(
    "/kernel",
    response_model=KernelResponse,
    summary="Time Kernel",
    description=(
        "Solve the time kernel equation to v-order N. The response embeds the "
        "boundary checks and the (empty) equation residual."
    ),
)
def time_kernel(
    request: KernelRequest,
    service: PipelineService = Depends(get_pipeline_service),
) -> KernelResponse:
    kernel = service.kernel(request.potential, request.order)
    qq = kernel_to_qq(kernel) if request.include_qq else None
    return KernelResponse.from_kernel(kernel, qq)


@router.post(
    "/transform",
    response_model=TransformResponse,
    summary="T_ħ Transform",
    description="Transform the kernel to phase space and take its classical limit.",
)
def transform(
    request: TransformRequest,
    service: PipelineService = Depends(get_pipeline_service),
) -> TransformResponse:
    return service.transform_response(request.potential, request.order)


@router.post(
    "/weyl",
    response_model=WeylResponse,
    summary="Weyl Quantization",
    description="Weyl kernel of the local time of arrival and its inversion.",
)
def weyl(
    request: WeylRequest,
    service: PipelineService = Depends(get_pipeline_service),
) -> WeylResponse:
    return service.weyl_response(request.potential, request.order)


@router.post(
    "/compare",
    response_model=ComparisonResponse,
    summary="Quantum-Classical Comparison",
    description=(
        "Compare the kernel with the classical series and with Weyl quantization. "
        "The report is returned even when it is inconsistent; check ``consistent``."
    ),
)
def compare(
    request: CompareRequest,
    service: PipelineService = Depends(get_pipeline_service),
) -> ComparisonResponse:
    report = service.compare(request.potential, request.order, request.ambiguity)
    return ComparisonResponse.from_report(report)


@router.post(
    "/numeric",
    response_model=NumericRow,
    summary="Series vs Quadrature",
    description="Evaluate t_x at one phase-space point and compare it with quadrature.",
)
def numeric(
    request: NumericRequest,
    service: PipelineService = Depends(get_pipeline_service),
) -> NumericRow:
    point = PhasePoint(
        q=request.q, p=request.p, x=request.x, params=request.params, mu=request.mu
    )
    return service.numeric(request.potential, point, request.order, poisson=request.poisson)


@router.get(
    "/tables/{which}",
    response_model=TableResponse,
    summary="Reference Tables",
    description="Regenerate table 1 (local series) or table 2 (kernel) as markdown.",
)
def tables(
    which: int,
    order: int = 4,
    service: TableService = Depends(get_table_service),
) -> TableResponse:
    return TableResponse(which=which, order=order, markdown=service.render(which, order))
