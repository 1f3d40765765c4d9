"""Pipeline service: parses inputs, runs the engines and memoizes results."""

import logging
from collections.abc import Callable
from fractions import Fraction
from functools import lru_cache

from toa_correspondence.algebra import Series
from toa_correspondence.algebra.codec import encode_series, parse_rational
from toa_correspondence.config import get_settings
from toa_correspondence.errors import (
    AlgebraError,
    ConsistencyError,
    InputError,
    InvalidOrderError,
)
from toa_correspondence.models.pipeline import TransformResponse, WeylResponse
from toa_correspondence.physics.kernel import (
    QQTerm,
    TimeKernel,
    check_boundary,
    kernel_to_qq,
    pde_residual,
    solve_time_kernel,
)
from toa_correspondence.physics.local_toa import LocalToaResult, local_toa_series
from toa_correspondence.physics.numeric import (
    NumericConfig,
    NumericRow,
    PhasePoint,
    numeric_sweep,
    sample_points,
    series_vs_quadrature,
)
from toa_correspondence.physics.potential import PolynomialPotential, parse_potential
from toa_correspondence.physics.transforms import (
    ComparisonReport,
    classical_limit,
    t_hbar_transform,
    verify_correspondence,
    weyl_inverse,
    weyl_kernel,
)

logger = logging.getLogger(__name__)


def parse_input_rational(text: str, field_name: str) -> Fraction:
    try:
        return parse_rational(text.strip())
    except AlgebraError as e:
        raise InputError(
            message=f"{field_name} must be a rational, got {text!r}",
            details={field_name: text},
        ) from e


def parse_arrival_point(text: str) -> Fraction | None:
    """``x`` keeps the arrival point symbolic; anything else must be a rational."""
    if text.strip() == "x":
        return None
    return parse_input_rational(text, "x")


class PipelineService:
    """Runs the local, kernel, transform and numeric pipelines behind one facade."""

    def __init__(self, max_order: int | None = None, cache_size: int | None = None):
        settings = get_settings()
        self.max_order = max_order if max_order is not None else settings.max_order
        size = cache_size if cache_size is not None else settings.cache_size
        self._kernel: Callable[[PolynomialPotential, int], TimeKernel] = lru_cache(
            maxsize=size
        )(solve_time_kernel)
        self._local: Callable[[PolynomialPotential, int, Fraction | None], LocalToaResult] = (
            lru_cache(maxsize=size)(local_toa_series)
        )

    def _check_order(self, order: int) -> None:
        if order > self.max_order:
            raise InvalidOrderError(order, f"order above the configured maximum {self.max_order}")

    def parse(self, text: str) -> PolynomialPotential:
        return parse_potential(text)

    def local(self, text: str, order: int, x: str = "0") -> LocalToaResult:
        self._check_order(order)
        return self._local(self.parse(text), order, parse_arrival_point(x))

    def kernel(self, text: str, order: int) -> TimeKernel:
        self._check_order(order)
        kernel = self._kernel(self.parse(text), order)
        if pde_residual(kernel) or not check_boundary(kernel):
            raise ConsistencyError(
                message="Kernel violates its equation or boundary conditions",
                details={"potential": text, "order": order},
            )
        return kernel

    def kernel_qq(self, text: str, order: int) -> list[QQTerm]:
        return kernel_to_qq(self.kernel(text, order))

    def transform(self, text: str, order: int) -> tuple[Series, Series]:
        """T_ħ of the kernel and its classical limit."""
        t_hbar = t_hbar_transform(self.kernel(text, order))
        return t_hbar, classical_limit(t_hbar)

    def transform_response(self, text: str, order: int) -> TransformResponse:
        t_hbar, limit = self.transform(text, order)
        return TransformResponse(
            potential=str(self.parse(text)),
            order=order,
            t_hbar=encode_series(t_hbar),
            classical_limit=encode_series(limit),
            correction_orders=sorted(b for b in t_hbar.hbar_orders() if b != 0),
        )

    def weyl(self, text: str, order: int) -> tuple[Series, Series]:
        """Weyl kernel of t₀ at depth ``order`` and the t₀ it came from."""
        local = self.local(text, order).series
        return weyl_kernel(local), local

    def weyl_response(self, text: str, order: int) -> WeylResponse:
        kernel, local = self.weyl(text, order)
        return WeylResponse(
            potential=str(self.parse(text)),
            order=order,
            local=encode_series(local),
            weyl_kernel=encode_series(kernel),
            inverse_matches=weyl_inverse(kernel) == local,
        )

    def compare(self, text: str, order: int, ambiguity: str = "0") -> ComparisonReport:
        self._check_order(order)
        c = parse_input_rational(ambiguity, "ambiguity")
        return verify_correspondence(self.parse(text), order, c)

    def numeric(
        self,
        text: str,
        point: PhasePoint,
        order: int,
        cfg: NumericConfig | None = None,
        poisson: bool = True,
    ) -> NumericRow:
        self._check_order(order)
        potential = self.parse(text)
        point = self._with_default_params(potential, point)
        return series_vs_quadrature(potential, point, order, cfg, with_poisson=poisson)

    def sweep(
        self,
        text: str,
        template: PhasePoint,
        order: int,
        count: int,
        seed: int,
        cfg: NumericConfig | None = None,
    ) -> list[NumericRow]:
        self._check_order(order)
        potential = self.parse(text)
        points = sample_points(count, seed, self._with_default_params(potential, template))
        return numeric_sweep(potential, order, points, cfg)

    def _with_default_params(
        self, potential: PolynomialPotential, point: PhasePoint
    ) -> PhasePoint:
        """Symbols of V without a value default to 1."""
        missing = sorted(potential.symbols - point.params.keys())
        if not missing:
            return point
        logger.info("Defaulting %s to 1", ", ".join(missing))
        return point.model_copy(update={"params": {**dict.fromkeys(missing, 1.0), **point.params}})

    def cache_info(self) -> dict[str, int]:
        kernel_info = self._kernel.cache_info()  # type: ignore[attr-defined]
        local_info = self._local.cache_info()  # type: ignore[attr-defined]
        return {
            "kernel_hits": kernel_info.hits,
            "kernel_misses": kernel_info.misses,
            "local_hits": local_info.hits,
            "local_misses": local_info.misses,
        }


# Singleton instance
_pipeline_service: PipelineService | None = None


def get_pipeline_service() -> PipelineService:
    """Get the pipeline service singleton."""
    global _pipeline_service
    if _pipeline_service is None:
        _pipeline_service = PipelineService()
    return _pipeline_service


def reset_pipeline_service() -> None:
    """Reset the pipeline service singleton (for testing)."""
    global _pipeline_service
    _pipeline_service = None
