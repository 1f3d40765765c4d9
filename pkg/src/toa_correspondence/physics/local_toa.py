"""Classical local time-of-arrival series and the local-series table closed forms."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from scipy.special import gamma

from toa_correspondence.algebra import Monomial, Series, Space
from toa_correspondence.config import BenchmarkSystem, get_system_preset
from toa_correspondence.errors import InvalidOrderError, UnknownSystemError
from toa_correspondence.physics.potential import PolynomialPotential, derivative, parse_potential

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LocalToaResult:
    """t_x = Σ_{k≤K} (−1)^k T_k together with the individual orders."""

    series: Series
    per_order: tuple[Series, ...]
    order: int
    x: Fraction | None

    def negated(self) -> Series:
        """−t_x, the form the local-series table shows."""
        return -self.series


def initial_term(x: Fraction | None = Fraction(0)) -> Series:
    """T_0 = μ(x − q)/p; ``x=None`` keeps the arrival point symbolic."""
    terms = [(Monomial.phase(q=1, pinv=1, mu=1), Fraction(-1))]
    if x is None:
        terms.append((Monomial.phase(x=1, pinv=1, mu=1), Fraction(1)))
    elif x != 0:
        terms.append((Monomial.phase(pinv=1, mu=1), Fraction(x)))
    return Series(Space.PHASE, terms)


def recurrence_step(
    potential: PolynomialPotential,
    previous: Series,
    k: int,
    x: Fraction | None = Fraction(0),
) -> Series:
    """
    T_k = (μ/p) ∫_q^x V'(q') ∂T_{k−1}(q', p; x)/∂p dq', term by term.

    ∂/∂p takes p^(−s) to −s·p^(−s−1) and ∫_q^x q'^r dq' is
    (x^(r+1) − q^(r+1))/(r+1). With a rational ``x`` the upper limit is folded
    into the coefficient, with ``x=None`` it stays as an x exponent.
    """
    slope = derivative(potential)
    terms: list[tuple[Monomial, Fraction]] = []
    for monomial, coefficient in previous.items():
        dp_coefficient = -monomial.pinv * coefficient
        if dp_coefficient == 0:
            continue
        for v_term in slope:
            power = monomial.q + v_term.degree + 1
            base = dp_coefficient * v_term.coefficient / power
            scalar = monomial.scalar_part() * v_term.monomial * Monomial.scalar(mu=1)
            pinv = monomial.pinv + 2
            terms.append((scalar * Monomial.phase(q=power, x=monomial.x, pinv=pinv), -base))
            if x is None:
                terms.append((scalar * Monomial.phase(x=monomial.x + power, pinv=pinv), base))
            elif x != 0:
                terms.append((scalar * Monomial.phase(x=monomial.x, pinv=pinv), base * x**power))
    result = Series(Space.PHASE, terms)
    logger.debug("T_%d has %d terms", k, len(result))
    return result


def local_toa_series(
    potential: PolynomialPotential,
    order: int,
    x: Fraction | None = Fraction(0),
) -> LocalToaResult:
    """Generate t_x up to recurrence depth ``order``."""
    if order < 0:
        raise InvalidOrderError(order, "recurrence depth must be >= 0")
    per_order = [initial_term(x)]
    for k in range(1, order + 1):
        per_order.append(recurrence_step(potential, per_order[-1], k, x))
    total = Series(Space.PHASE)
    for k, term in enumerate(per_order):
        total = total + (term if k % 2 == 0 else -term)
    return LocalToaResult(total, tuple(per_order), order, x)


@dataclass(frozen=True)
class TableOneCoefficient:
    """
    Coefficient of ``monomial`` in −t₀ for a local-series table system.

    ``coefficient`` is the value the engines must reproduce. ``printed`` is the
    rational part of the printed formula, which equals
    ``printed * Γ(3/4)^gamma_power`` in full.
    """

    system: BenchmarkSystem
    k: int
    coefficient: Fraction
    monomial: Monomial
    printed: Fraction
    gamma_power: int = 0

    @property
    def printed_value(self) -> float:
        return float(self.printed) * gamma(0.75) ** self.gamma_power

    @property
    def discrepancy(self) -> float:
        """Printed over derived; 1 when the printed formula is right."""
        return self.printed_value / float(self.coefficient)


def closed_form_coefficient(system: BenchmarkSystem | str, k: int) -> TableOneCoefficient:
    """Local-series table coefficient of q^a/p^(2k+1) in −t₀."""
    try:
        system = BenchmarkSystem(system)
    except ValueError:
        raise UnknownSystemError(details={"system": str(system)}) from None
    if k < 0:
        raise InvalidOrderError(k, "k must be >= 0")
    sign = -1 if k % 2 else 1

    if system is BenchmarkSystem.LINEAR:
        value = Fraction(
            sign * math.factorial(2 * k),
            2**k * math.factorial(k + 1) * math.factorial(k),
        )
        monomial = Monomial.phase(q=k + 1, pinv=2 * k + 1, mu=k + 1, sym={"lambda": k})
        return TableOneCoefficient(system, k, value, monomial, value)
    if system is BenchmarkSystem.HARMONIC:
        value = Fraction(sign, 2 * k + 1)
        monomial = Monomial.phase(q=2 * k + 1, pinv=2 * k + 1, mu=2 * k + 1, sym={"omega": 2 * k})
        return TableOneCoefficient(system, k, value, monomial, value)
    if system is BenchmarkSystem.QUARTIC:
        monomial = Monomial.phase(q=4 * k + 1, pinv=2 * k + 1, mu=k + 1, sym={"lambda": k})
        derived = -_quartic_local(k).series.coefficient(monomial)
        return TableOneCoefficient(
            system, k, derived, monomial, printed_quartic_rational(k), gamma_power=2
        )
    raise UnknownSystemError(
        message=f"System {system.value!r} has no local-series table row",
        details={"system": system.value},
    )


@lru_cache(maxsize=16)
def _quartic_local(order: int) -> LocalToaResult:
    preset = get_system_preset(BenchmarkSystem.QUARTIC)
    return local_toa_series(parse_potential(preset.potential), order)


def printed_quartic_rational(k: int) -> Fraction:
    """
    Rational r_k with printed coefficient = r_k · Γ(3/4)².

    Uses Γ(−1/4 − k) = −4Γ(3/4)/∏_{j≤k}(−1/4 − j) and
    Γ(1/2 − k) = √π/∏_{j≤k}(1/2 − j); the √π factors cancel.
    """
    shifted_quarter = math.prod((Fraction(-1, 4) - j for j in range(1, k + 1)), start=Fraction(1))
    shifted_half = math.prod((Fraction(1, 2) - j for j in range(1, k + 1)), start=Fraction(1))
    return Fraction(-2) ** (k + 1) * Fraction(-1, 2) * shifted_half / shifted_quarter


def printed_quartic_numeric(k: int) -> float:
    """The printed quartic coefficient evaluated directly with Γ."""
    return (
        gamma(0.75)
        * math.sqrt(math.pi)
        / 8
        * (-2.0) ** (k + 1)
        * gamma(-k - 0.25)
        / gamma(0.5 - k)
    )
