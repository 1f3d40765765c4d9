"""Request and response models of the pipeline endpoints."""

from typing import Any

from pydantic import BaseModel, Field

from toa_correspondence.algebra.codec import encode_series, format_rational
from toa_correspondence.physics.kernel import (
    QQTerm,
    TimeKernel,
    boundary_conditions,
    pde_residual,
)
from toa_correspondence.physics.local_toa import LocalToaResult
from toa_correspondence.physics.transforms import ComparisonReport, SystemClass

Terms = list[dict[str, Any]]


# Requests


class PotentialRequest(BaseModel):
    """Fields shared by every pipeline request."""

    potential: str = Field(
        ...,
        min_length=1,
        max_length=500,
        description="Polynomial potential, e.g. 'lambda*q^4' or '1/2*mu*omega^2*q^2'",
        examples=["lambda*q^4"],
    )


class LocalRequest(PotentialRequest):
    order: int = Field(default=4, ge=0, description="Recurrence depth K")
    x: str = Field(
        default="0",
        description="Arrival point: a rational such as '1/2', or 'x' to keep it symbolic",
    )
    negate: bool = Field(
        default=False, description="Return −t_x, the form the local-series table shows"
    )


class KernelRequest(PotentialRequest):
    order: int = Field(default=4, ge=0, description="Even v-order N")
    include_qq: bool = Field(default=False, description="Also return the (q, q′) form")


class TransformRequest(PotentialRequest):
    order: int = Field(default=4, ge=0, description="Even v-order N of the kernel")


class WeylRequest(PotentialRequest):
    order: int = Field(default=2, ge=0, description="Recurrence depth K of t₀")


class CompareRequest(PotentialRequest):
    order: int = Field(default=8, ge=0, description="Even v-order N; t₀ uses K = N/2")
    ambiguity: str = Field(
        default="0", description="Rational multiple c of the kernel μħ⁻¹|q − q′|"
    )


class NumericRequest(PotentialRequest):
    q: float
    p: float
    x: float = 0.0
    order: int = Field(default=10, ge=0, description="Recurrence depth K")
    mu: float = Field(default=1.0, gt=0)
    params: dict[str, float] = Field(default_factory=dict)
    poisson: bool = Field(default=True, description="Also report the Poisson-bracket residual")


# Responses


class LocalToaResponse(BaseModel):
    potential: str
    order: int
    x: str
    negated: bool
    series: Terms
    per_order: list[Terms]

    @classmethod
    def from_result(
        cls, potential: str, result: LocalToaResult, negate: bool = False
    ) -> "LocalToaResponse":
        sign = -1 if negate else 1
        return cls(
            potential=potential,
            order=result.order,
            x="x" if result.x is None else format_rational(result.x),
            negated=negate,
            series=encode_series(result.series.scale(sign)),
            per_order=[
                encode_series(term.scale(sign if k % 2 == 0 else -sign))
                for k, term in enumerate(result.per_order)
            ],
        )


class QQTermModel(BaseModel):
    q: int
    qp: int
    coeff: str
    mu: int
    hbar: int
    sym: dict[str, int]

    @classmethod
    def from_term(cls, term: QQTerm) -> "QQTermModel":
        return cls(
            q=term.q_exp,
            qp=term.qp_exp,
            coeff=format_rational(term.coefficient),
            mu=term.monomial.mu,
            hbar=term.monomial.hbar,
            sym=term.monomial.sym_map,
        )


class KernelResponse(BaseModel):
    potential: str
    order: int
    series: Terms
    boundary: dict[str, bool]
    residual: Terms
    qq: list[QQTermModel] | None = None

    @classmethod
    def from_kernel(
        cls, kernel: TimeKernel, qq: list[QQTerm] | None = None
    ) -> "KernelResponse":
        check = boundary_conditions(kernel)
        return cls(
            potential=str(kernel.potential),
            order=kernel.order,
            series=encode_series(kernel.series),
            boundary={
                "row": check.row,
                "column": check.column,
                "composite": check.composite,
                "ok": check.ok,
            },
            residual=encode_series(pde_residual(kernel)),
            qq=None if qq is None else [QQTermModel.from_term(t) for t in qq],
        )


class TransformResponse(BaseModel):
    potential: str
    order: int
    t_hbar: Terms
    classical_limit: Terms
    correction_orders: list[int]


class WeylResponse(BaseModel):
    potential: str
    order: int
    local: Terms
    weyl_kernel: Terms
    inverse_matches: bool = Field(..., description="Inverting the Weyl kernel recovers t₀")


class ComparisonResponse(BaseModel):
    potential: str
    order: int
    system_class: SystemClass
    classical_match: bool
    correction_orders: list[int]
    weyl_equals_kernel: bool
    leading_family_match: bool
    consistent: bool
    delta_terms: Terms
    ambiguity: Terms

    @classmethod
    def from_report(cls, report: ComparisonReport) -> "ComparisonResponse":
        return cls(
            potential=str(report.potential),
            order=report.order,
            system_class=report.system_class,
            classical_match=report.classical_match,
            correction_orders=list(report.correction_orders),
            weyl_equals_kernel=report.weyl_equals_kernel,
            leading_family_match=report.leading_family_match,
            consistent=report.consistent,
            delta_terms=encode_series(report.delta_series),
            ambiguity=encode_series(report.ambiguity),
        )


class TableResponse(BaseModel):
    which: int
    order: int
    markdown: str
