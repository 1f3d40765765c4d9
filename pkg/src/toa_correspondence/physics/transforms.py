"""Phase-space bridges: the T_ħ transform, Weyl quantization and its inverse."""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from toa_correspondence.algebra import Monomial, Series, Space
from toa_correspondence.errors import (
    ConventionError,
    GradingViolationError,
    InvalidOrderError,
    UnsupportedObservableError,
)
from toa_correspondence.physics.kernel import TimeKernel, solve_time_kernel
from toa_correspondence.physics.local_toa import local_toa_series
from toa_correspondence.physics.potential import PolynomialPotential

logger = logging.getLogger(__name__)


def _real_i_power(exponent: int) -> int:
    """i^exponent for even exponents."""
    if exponent % 2:
        raise ConventionError(
            message=f"i^{exponent} is not real", details={"exponent": exponent}
        )
    return -1 if exponent % 4 == 2 else 1


def _kernel_term_to_phase(
    monomial: Monomial, alpha: Fraction
) -> Iterable[tuple[Monomial, Fraction]]:
    # 2π·(μ/iħ)·α(2q)^m ∫ v^n sgn(v) e^{−ivp/ħ} dv, using
    # ∫ σ^n sgn(σ) e^{−ixσ} dσ = n!/(i^{n+1}π) x^{−n−1}
    m, n = monomial.u, monomial.v
    if n % 2:
        raise ConventionError(details={"u": m, "v": n})
    coefficient = alpha * 2 * math.factorial(n) * _real_i_power(-(n + 2)) * 2**m
    target = monomial.scalar_part().shift(mu=1, hbar=n) * Monomial.phase(q=m, pinv=n + 1)
    yield target, coefficient


def _kernel_series(kernel: TimeKernel | Series) -> Series:
    series = kernel.series if isinstance(kernel, TimeKernel) else kernel
    if series.space is not Space.KERNEL:
        raise ConventionError(message="Expected a kernel-space series")
    return series


def t_hbar_transform(kernel: TimeKernel | Series) -> Series:
    """
    T_ħ(q, p) of the kernel (μ/iħ)·T(u, v)·sgn(v) at u = 2q, termwise:
    α u^m v^n ↦ 2μ α n! i^(−(n+2)) (2q)^m ħ^n p^(−(n+1)).
    """
    return _kernel_series(kernel).map_terms(_kernel_term_to_phase, Space.PHASE)


def weyl_inverse(kernel: Series) -> Series:
    """Recover the phase-space symbol from a Weyl kernel; inverse of weyl_kernel."""
    return _kernel_series(kernel).map_terms(_kernel_term_to_phase, Space.PHASE)


def _phase_term_to_weyl(
    monomial: Monomial, c: Fraction
) -> Iterable[tuple[Monomial, Fraction]]:
    s, a = monomial.pinv, monomial.q
    if s % 2 == 0:
        raise UnsupportedObservableError(details={"pinv": s})
    if monomial.hbar != 0 or monomial.x != 0:
        raise UnsupportedObservableError(
            message="Weyl kernels are built from ħ-free series at x = 0",
            details={"hbar": monomial.hbar, "x": monomial.x},
        )
    coefficient = c * _real_i_power(s + 1) / (2 * math.factorial(s - 1) * 2**a)
    scalar = monomial.scalar_part().shift(mu=-1, hbar=-(s - 1))
    target = scalar * Monomial.kernel(u=a, v=s - 1)
    yield target, coefficient


def weyl_kernel(local: Series) -> Series:
    """
    Weyl kernel of a local time-of-arrival series, stored in the (μ/iħ)·sgn convention:
    c q^a p^(−s) ↦ c i^(s+1) / (2μ (s−1)!) · 2^(−a) ħ^(−(s−1)) u^a v^(s−1).
    """
    if local.space is not Space.PHASE:
        raise UnsupportedObservableError(message="Expected a phase-space series")
    return local.map_terms(_phase_term_to_weyl, Space.KERNEL)


def classical_limit(series: Series) -> Series:
    """ħ⁰ part of a transform; a negative ħ power falsifies the grading."""
    negative = sorted(b for b in series.hbar_orders() if b < 0)
    if negative:
        raise GradingViolationError(details={"hbar_orders": negative})
    return series.filter_hbar(lambda b: b == 0)


def ambiguity_transform(c: Fraction | int) -> Series:
    """
    T_ħ of the free-particle ambiguity kernel c·μħ⁻¹|q − q′|.

    |v| = v·sgn(v) is the m = 2 case of the sign-moment identity, giving
    2π·cμħ⁻¹·(1!/(i²π))·ħ²/p² = −2cμħ/p².
    """
    coefficient = Fraction(c) * 2 * math.factorial(1) * _real_i_power(-2)
    return Series(Space.PHASE, [(Monomial.phase(pinv=2, mu=1, hbar=1), coefficient)])


class SystemClass(str, Enum):
    """Outcome of the quantum-classical comparison."""

    EXACT = "exact"
    HBAR_CORRECTED = "hbar_corrected"


@dataclass(frozen=True)
class ComparisonReport:
    """Two-pipeline comparison of one potential at kernel order N."""

    potential: PolynomialPotential
    order: int
    system_class: SystemClass
    classical_match: bool
    correction_orders: tuple[int, ...]
    weyl_equals_kernel: bool
    leading_family_match: bool
    delta_series: Series
    kernel: TimeKernel
    t_hbar: Series
    local: Series
    weyl: Series
    ambiguity: Series

    @property
    def consistent(self) -> bool:
        """Every cross-check the correspondence result implies holds."""
        grading_ok = all(b >= 2 and b % 2 == 0 for b in self.correction_orders)
        class_ok = (self.system_class is SystemClass.EXACT) == (
            not self.delta_series and not self.correction_orders
        )
        return self.classical_match and self.leading_family_match and grading_ok and class_ok


def verify_correspondence(
    potential: PolynomialPotential,
    order: int,
    ambiguity: Fraction | int = 0,
) -> ComparisonReport:
    """
    Compare supraquantization with the classical recurrence and with Weyl quantization.

    Kernel order N is matched with recurrence depth N/2. The optional ambiguity
    multiple is transformed separately and never mixed into T_ħ.
    """
    if order % 2:
        raise InvalidOrderError(order, "v-order must be even")
    kernel = solve_time_kernel(potential, order)
    local = local_toa_series(potential, order // 2).series
    t_hbar = t_hbar_transform(kernel)
    weyl = weyl_kernel(local)

    classical_match = classical_limit(t_hbar) == local
    correction_orders = tuple(sorted(b for b in t_hbar.hbar_orders() if b != 0))
    delta = kernel.series - weyl
    system_class = SystemClass.EXACT if not delta else SystemClass.HBAR_CORRECTED

    report = ComparisonReport(
        potential=potential,
        order=order,
        system_class=system_class,
        classical_match=classical_match,
        correction_orders=correction_orders,
        weyl_equals_kernel=not delta,
        leading_family_match=weyl == kernel.leading_family(),
        delta_series=delta,
        kernel=kernel,
        t_hbar=t_hbar,
        local=local,
        weyl=weyl,
        ambiguity=ambiguity_transform(ambiguity),
    )
    logger.info(
        "V=%s N=%d: %s (classical match %s, ħ orders %s)",
        potential,
        order,
        system_class.value,
        classical_match,
        list(correction_orders),
    )
    return report
