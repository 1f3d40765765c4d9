"""Floating-point oracles: quadrature, closed forms, convergence region and conjugacy."""

from __future__ import annotations

import logging
import math
import warnings
from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction
from typing import ClassVar

import numpy as np
from numpy.polynomial import Polynomial
from pydantic import BaseModel, ConfigDict, Field
from scipy.integrate import IntegrationWarning, quad

from toa_correspondence.algebra import Series
from toa_correspondence.config import BenchmarkSystem, get_settings
from toa_correspondence.errors import (
    MathDomainError,
    NumericError,
    QuadratureBudgetError,
    SingularEvaluationError,
    UnknownSystemError,
    UnreachableError,
)
from toa_correspondence.physics.local_toa import local_toa_series
from toa_correspondence.physics.potential import PolynomialPotential

logger = logging.getLogger(__name__)

TimeFunction = Callable[[float, float], float]

# Relative distance below which a root of H − V counts as sitting on an endpoint.
_ENDPOINT_RTOL = 1e-9
_IMAG_TOL = 1e-10


class NumericConfig(BaseModel):
    """Tolerances of the numeric oracles."""

    model_config = ConfigDict(frozen=True)

    abs_tol: float = Field(default=1e-10, gt=0)
    max_subdiv: int = Field(default=60, ge=1)
    fd_step: float = Field(default=1e-6, gt=0)

    @classmethod
    def from_settings(cls) -> NumericConfig:
        settings = get_settings()
        return cls(
            abs_tol=settings.quad_abs_tol,
            max_subdiv=settings.quad_max_subdiv,
            fd_step=settings.fd_step,
        )


class PhasePoint(BaseModel):
    """A phase-space point with the arrival point and parameter values."""

    model_config = ConfigDict(frozen=True)

    q: float
    p: float
    x: float = 0.0
    params: dict[str, float] = Field(default_factory=dict)
    mu: float = Field(default=1.0, gt=0)
    hbar: float = 1.0

    def at(self, q: float, p: float) -> PhasePoint:
        return self.model_copy(update={"q": q, "p": p})

    def coordinates(self) -> dict[str, float]:
        return {"q": self.q, "p": self.p, "x": self.x}


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error: float

    def __float__(self) -> float:
        return self.value


class NumericRow(BaseModel):
    """One series-versus-quadrature comparison; the CSV sweep row."""

    q: float
    p: float
    K: int
    series_value: float | None = None
    quadrature_value: float | None = None
    abs_error: float | None = None
    in_region: bool
    reachable: bool = True
    poisson_residual: float | None = None
    failure: str | None = None

    CSV_COLUMNS: ClassVar[tuple[str, ...]] = (
        "q",
        "p",
        "K",
        "series_value",
        "quadrature_value",
        "abs_error",
        "in_region",
        "reachable",
        "poisson_residual",
        "failure",
    )


def _energy_gap(potential: PolynomialPotential, pt: PhasePoint) -> Polynomial:
    """H(q, p) − V(q′) as a polynomial in q′."""
    v = potential.as_numpy(pt.params, pt.mu)
    energy = pt.p**2 / (2 * pt.mu) + float(v(pt.q))
    return Polynomial([energy]) - v


def _interior_zeros(gap: Polynomial, a: float, b: float) -> list[float]:
    lo, hi = min(a, b), max(a, b)
    margin = _ENDPOINT_RTOL * max(1.0, abs(lo), abs(hi))
    if gap.degree() < 1:
        return []
    return sorted(
        float(r.real)
        for r in np.atleast_1d(gap.roots())
        if abs(r.imag) < _IMAG_TOL and lo + margin < r.real < hi - margin
    )


def global_toa_quadrature(
    potential: PolynomialPotential,
    pt: PhasePoint,
    cfg: NumericConfig | None = None,
) -> QuadratureResult:
    """
    T_x(q, p) = sgn(p)·√(μ/2)·∫_q^x dq′ / √(H − V(q′)).

    The path is always integrated through q′ = x + (q − x)s². It removes the
    inverse square root of a turning point at x and stays smooth when H − V(x)
    is merely small. Zeros of H − V strictly inside the path make the
    arrival impossible.
    """
    cfg = cfg or NumericConfig.from_settings()
    if pt.p == 0:
        raise SingularEvaluationError(message="Quadrature needs p != 0", details={"p": pt.p})
    if pt.q == pt.x:
        return QuadratureResult(0.0, 0.0)

    gap = _energy_gap(potential, pt)
    zeros = _interior_zeros(gap, pt.q, pt.x)
    if zeros:
        raise UnreachableError(
            message="The path to the arrival point crosses a classically forbidden region",
            details={"q": pt.q, "p": pt.p, "x": pt.x, "turning_points": zeros},
        )
    turning = abs(float(gap(pt.x))) <= _ENDPOINT_RTOL * max(1.0, float(gap(pt.q)))
    if not turning and float(gap(pt.x)) < 0:
        raise UnreachableError(details={"q": pt.q, "p": pt.p, "x": pt.x})

    span = pt.q - pt.x

    def substituted(s: float) -> float:
        value = float(gap(pt.x + span * s * s))
        if value <= 0:
            return 0.0
        return 2 * span * s / math.sqrt(value)

    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            # ∫_q^x = −∫_x^q and the substitution maps [x, q] onto s ∈ [0, 1]
            raw, err = quad(
                substituted, 0.0, 1.0, epsabs=cfg.abs_tol, epsrel=0.0, limit=cfg.max_subdiv
            )
        except IntegrationWarning as exc:
            raise QuadratureBudgetError(
                message=str(exc).splitlines()[0],
                details={"q": pt.q, "p": pt.p, "x": pt.x, "max_subdiv": cfg.max_subdiv},
            ) from exc

    factor = -math.copysign(math.sqrt(pt.mu / 2), pt.p)
    return QuadratureResult(factor * raw, abs(factor) * err)


def closed_form_global(system: BenchmarkSystem | str, pt: PhasePoint) -> float:
    """
    Global arrival time at the origin for the systems with a printed closed form:
    free −μq/p, linear −(p/λ)(√(1 + 2μλq/p²) − 1), harmonic −(1/ω)arctan(μωq/p).
    """
    try:
        system = BenchmarkSystem(system)
    except ValueError:
        raise UnknownSystemError(details={"system": str(system)}) from None
    if pt.p == 0:
        raise MathDomainError(message="Closed forms need p != 0", details={"p": pt.p})

    if system is BenchmarkSystem.FREE:
        return -pt.mu * pt.q / pt.p
    if system is BenchmarkSystem.LINEAR:
        lam = _parameter(pt, "lambda")
        radicand = 1 + 2 * pt.mu * lam * pt.q / pt.p**2
        if radicand < 0:
            raise MathDomainError(
                message="1 + 2μλq/p² < 0: the particle turns before the origin",
                details={"radicand": radicand},
            )
        return -(pt.p / lam) * (math.sqrt(radicand) - 1)
    if system is BenchmarkSystem.HARMONIC:
        omega = _parameter(pt, "omega")
        return -math.atan(pt.mu * omega * pt.q / pt.p) / omega
    raise UnknownSystemError(
        message=f"System {system.value!r} has no closed global form",
        details={"system": system.value},
    )


def _parameter(pt: PhasePoint, name: str) -> float:
    value = pt.params.get(name)
    if value is None or value == 0:
        raise MathDomainError(
            message=f"Closed form needs a nonzero {name}", details={"symbol": name}
        )
    return value


def convergence_region_check(potential: PolynomialPotential, pt: PhasePoint) -> bool:
    """max over q′ on [x, q] of |V(q) − V(q′)| < p²/(2μ)."""
    if pt.q == pt.x:
        return True
    v = potential.as_numpy(pt.params, pt.mu)
    lo, hi = min(pt.q, pt.x), max(pt.q, pt.x)
    candidates = [lo, hi]
    if v.degree() >= 2:
        candidates += [
            float(r.real)
            for r in np.atleast_1d(v.deriv().roots())
            if abs(r.imag) < _IMAG_TOL and lo < r.real < hi
        ]
    reference = float(v(pt.q))
    spread = max(abs(reference - float(v(c))) for c in candidates)
    return spread < pt.p**2 / (2 * pt.mu)


def series_evaluator(series: Series, pt: PhasePoint) -> TimeFunction:
    """(q, p) ↦ value of a phase-space series with the rest of ``pt`` held fixed."""

    def evaluate(q: float, p: float) -> float:
        return series.evaluate(pt.params, {"q": q, "p": p, "x": pt.x}, pt.mu, pt.hbar)

    return evaluate


def closed_form_evaluator(system: BenchmarkSystem | str, pt: PhasePoint) -> TimeFunction:
    def evaluate(q: float, p: float) -> float:
        return closed_form_global(system, pt.at(q, p))

    return evaluate


def poisson_bracket_check(
    time_function: TimeFunction,
    potential: PolynomialPotential,
    pt: PhasePoint,
    cfg: NumericConfig | None = None,
) -> float:
    """|∂_q H·∂_p T − ∂_p H·∂_q T − 1| by central differences with relative step."""
    cfg = cfg or NumericConfig.from_settings()
    slope = potential.as_numpy(pt.params, pt.mu).deriv()
    hq = cfg.fd_step * max(1.0, abs(pt.q))
    hp = cfg.fd_step * max(1.0, abs(pt.p))
    try:
        dq_t = (time_function(pt.q + hq, pt.p) - time_function(pt.q - hq, pt.p)) / (2 * hq)
        dp_t = (time_function(pt.q, pt.p + hp) - time_function(pt.q, pt.p - hp)) / (2 * hp)
    except (ValueError, ZeroDivisionError) as exc:
        raise MathDomainError(
            message=f"Time function failed near ({pt.q}, {pt.p}): {exc}",
            details={"q": pt.q, "p": pt.p},
        ) from exc
    bracket = float(slope(pt.q)) * dp_t - (pt.p / pt.mu) * dq_t
    return abs(bracket - 1.0)


def _local_series(potential: PolynomialPotential, order: int, x: float) -> Series:
    return local_toa_series(potential, order, Fraction(0) if x == 0 else None).series


def _compare_point(
    potential: PolynomialPotential,
    series: Series,
    pt: PhasePoint,
    order: int,
    cfg: NumericConfig,
    with_poisson: bool,
) -> NumericRow:
    in_region = convergence_region_check(potential, pt)
    if not in_region:
        logger.warning(
            "(q=%g, p=%g) lies outside the convergence region; the series error is unbounded",
            pt.q,
            pt.p,
        )
    series_value = series_evaluator(series, pt)(pt.q, pt.p)
    try:
        quadrature = global_toa_quadrature(potential, pt, cfg)
    except UnreachableError:
        logger.warning("(q=%g, p=%g) cannot reach x=%g", pt.q, pt.p, pt.x)
        return NumericRow(
            q=pt.q, p=pt.p, K=order, series_value=series_value, in_region=in_region,
            reachable=False,
        )
    residual = None
    if with_poisson:
        residual = poisson_bracket_check(series_evaluator(series, pt), potential, pt, cfg)
    return NumericRow(
        q=pt.q,
        p=pt.p,
        K=order,
        series_value=series_value,
        quadrature_value=quadrature.value,
        abs_error=abs(series_value - quadrature.value),
        in_region=in_region,
        poisson_residual=residual,
    )


def series_vs_quadrature(
    potential: PolynomialPotential,
    pt: PhasePoint,
    order: int,
    cfg: NumericConfig | None = None,
    with_poisson: bool = False,
) -> NumericRow:
    """
    Evaluate t_x at recurrence depth ``order`` and compare it with quadrature.

    Unreachable points come back flagged with no quadrature value; points outside
    the convergence region are flagged and logged.
    """
    cfg = cfg or NumericConfig.from_settings()
    series = _local_series(potential, order, pt.x)
    return _compare_point(potential, series, pt, order, cfg, with_poisson)


def sample_points(
    count: int,
    seed: int,
    template: PhasePoint,
    q_range: tuple[float, float] = (-1.0, 1.0),
    p_range: tuple[float, float] = (0.5, 3.0),
) -> list[PhasePoint]:
    """Seeded random points: uniform q, |p| uniform in ``p_range`` with a random sign."""
    rng = np.random.default_rng(seed)
    qs = rng.uniform(*q_range, size=count)
    ps = rng.uniform(*p_range, size=count) * rng.choice([-1.0, 1.0], size=count)
    return [template.at(float(q), float(p)) for q, p in zip(qs, ps, strict=True)]


def numeric_sweep(
    potential: PolynomialPotential,
    order: int,
    points: list[PhasePoint],
    cfg: NumericConfig | None = None,
    with_poisson: bool = True,
) -> list[NumericRow]:
    """
    Compare series and quadrature over many points, building each series once.

    Every point yields a row. A point whose quadrature or closed form fails keeps
    its error code in ``failure`` and leaves the value columns empty.
    """
    cfg = cfg or NumericConfig.from_settings()
    cache: dict[float, Series] = {}
    rows = []
    for pt in points:
        if pt.x not in cache:
            cache[pt.x] = _local_series(potential, order, pt.x)
        try:
            rows.append(_compare_point(potential, cache[pt.x], pt, order, cfg, with_poisson))
        except (NumericError, SingularEvaluationError) as exc:
            logger.warning("(q=%g, p=%g) failed: %s", pt.q, pt.p, exc.message)
            rows.append(
                NumericRow(
                    q=pt.q,
                    p=pt.p,
                    K=order,
                    in_region=convergence_region_check(potential, pt),
                    failure=exc.error_code,
                )
            )
    logger.info(
        "Sweep of %d points for V=%s at K=%d: %d failed",
        len(points),
        potential,
        order,
        sum(row.failure is not None for row in rows),
    )
    return rows
