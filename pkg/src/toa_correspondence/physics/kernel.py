"""Power-series solution of the time kernel equation in u = q + q′, v = q − q′."""

from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from toa_correspondence.algebra import Monomial, Series, Space
from toa_correspondence.config import BenchmarkSystem
from toa_correspondence.errors import (
    DegenerateRecurrenceError,
    InvalidOrderError,
    UnknownSystemError,
)
from toa_correspondence.physics.potential import PolynomialPotential, difference_poly

logger = logging.getLogger(__name__)

FREE_KERNEL_TERM = Monomial.kernel(u=1)
PDE_FACTOR = Monomial.scalar(mu=1, hbar=-2)  # μ/ħ², the 1/2 is applied separately


@dataclass(frozen=True)
class TimeKernel:
    """
    T(u, v) = Σ α_{m,n} u^m v^n truncated at v-degree ``order``.

    The operator kernel is (μ/iħ)·T·sgn(v); only the real T is stored.
    """

    series: Series
    order: int
    potential: PolynomialPotential

    def alpha(self, m: int, n: int) -> Series:
        """All terms of the (m, n) coefficient, one per ħ/parameter monomial."""
        return self.series.select(lambda t: t.u == m and t.v == n)

    def leading_family(self) -> Series:
        """Terms with hbar_exp + v_exp = 0: the part Weyl quantization reproduces."""
        return self.series.select(lambda t: t.hbar + t.v == 0)

    def corrections(self) -> Series:
        return self.series.select(lambda t: t.hbar + t.v != 0)


def _check_order(order: int) -> None:
    if order < 0:
        raise InvalidOrderError(order, "v-order must be >= 0")
    if order % 2:
        raise InvalidOrderError(order, "v-order must be even")


def solve_time_kernel(potential: PolynomialPotential, order: int) -> TimeKernel:
    """
    Solve −(2ħ²/μ) T_uv + D(u, v) T = 0 with T(u, 0) = u/4 and T(0, v) = 0.

    From the seed α_{1,0} = 1/4 every term is pushed forward by
    α_{m+1,n+1} += (μ/(2ħ²)) d_{a,b} α_{m−a,n−b} / ((m+1)(n+1)). Sources always
    sit in a strictly lower v-column (b ≥ 1), so one sweep in increasing n is
    complete.
    """
    _check_order(order)
    entries = difference_poly(potential).entries()
    columns: dict[int, dict[Monomial, Fraction]] = defaultdict(lambda: defaultdict(Fraction))
    columns[0][FREE_KERNEL_TERM] = Fraction(1, 4)

    for n in range(order + 1):
        column = {m: c for m, c in columns.get(n, {}).items() if c != 0}
        for monomial, coefficient in column.items():
            for a, b, d, d_monomial in entries:
                target_n = n + b + 1
                if target_n > order:
                    continue
                target_m = monomial.u + a + 1
                target = (
                    monomial * d_monomial * PDE_FACTOR * Monomial.kernel(u=a + 1, v=b + 1)
                )
                columns[target_n][target] += coefficient * d / (2 * target_m * target_n)

    series = Series(
        Space.KERNEL,
        [(m, c) for column in columns.values() for m, c in column.items()],
    )
    logger.info("Solved time kernel for V=%s to v^%d: %d terms", potential, order, len(series))
    return TimeKernel(series, order, potential)


def mixed_derivative(series: Series) -> Series:
    """∂²/∂u∂v of a kernel series."""
    return Series(
        Space.KERNEL,
        [
            (m.shift(u=-1, v=-1), c * m.u * m.v)
            for m, c in series.items()
            if m.u and m.v
        ],
    )


def pde_residual(kernel: TimeKernel) -> Series:
    """
    −T_uv + (μ/(2ħ²))·D·T truncated to v ≤ N.

    This is the kernel equation multiplied through by μ/(2ħ²); it is empty
    exactly when the equation holds to the truncation order.
    """
    difference = difference_poly(kernel.potential).series
    source = (difference * kernel.series).scale(Fraction(1, 2), PDE_FACTOR)
    residual = source - mixed_derivative(kernel.series)
    return residual.select(lambda m: m.v <= kernel.order)


@dataclass(frozen=True)
class BoundaryCheck:
    row: bool
    column: bool
    composite: bool

    @property
    def ok(self) -> bool:
        return self.row and self.column and self.composite


def boundary_conditions(kernel: TimeKernel) -> BoundaryCheck:
    """
    T(u, 0) = u/4, T(0, v) = 0, and the diagonal condition
    dT(q,q)/dq + ∂₁T(q,q) + ∂₂T(q,q) = 1, which in (u, v) reads 4·∂_u T(u, 0) = 1.
    """
    row = kernel.series.select(lambda m: m.v == 0)
    column = kernel.series.select(lambda m: m.u == 0)
    d_row = Series(
        Space.KERNEL, [(m.shift(u=-1), c * m.u) for m, c in row.items() if m.u]
    ).scale(4)
    return BoundaryCheck(
        row=row == Series.term(Fraction(1, 4), FREE_KERNEL_TERM),
        column=not column,
        composite=d_row == Series.term(1, Monomial.kernel()),
    )


def check_boundary(kernel: TimeKernel) -> bool:
    return boundary_conditions(kernel).ok


@dataclass(frozen=True)
class DeltaTable:
    """Δ_{m,n} for n ≤ order, defined on n ≥ 2m ≥ 0; zero elsewhere."""

    order: int
    values: dict[tuple[int, int], Fraction] = field(default_factory=dict)

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        return self.values.get(index, Fraction(0))


def delta_table(order: int) -> DeltaTable:
    """(4n + 1 − 6m)·n·Δ_{m,n} = Δ_{m,n−1} + Δ_{m−1,n−2}, Δ_{0,0} = 1."""
    if order < 0:
        raise InvalidOrderError(order, "Δ order must be >= 0")
    values: dict[tuple[int, int], Fraction] = {(0, 0): Fraction(1)}
    for n in range(1, order + 1):
        for m in range(0, n // 2 + 1):
            divisor = (4 * n + 1 - 6 * m) * n
            if divisor == 0:
                raise DegenerateRecurrenceError(details={"m": m, "n": n})
            values[(m, n)] = (
                values.get((m, n - 1), Fraction(0)) + values.get((m - 1, n - 2), Fraction(0))
            ) / divisor
    return DeltaTable(order, {k: v for k, v in values.items()})


def printed_delta_zero(n: int) -> Fraction:
    """(4^(n+2) n! Γ(3/4))^(−1) (−1)^n Γ(−1/4 − n), reduced to a rational."""
    shifted = math.prod((Fraction(-1, 4) - j for j in range(1, n + 1)), start=Fraction(1))
    return Fraction((-1) ** n) * Fraction(-4) / (4 ** (n + 2) * math.factorial(n) * shifted)


@dataclass(frozen=True)
class TableTwoEntry:
    """Printed α coefficient of one kernel table term."""

    system: BenchmarkSystem
    index: tuple[int, ...]
    monomial: Monomial
    coefficient: Fraction


def table_two_coefficient(
    system: BenchmarkSystem | str, k: int, n: int | None = None
) -> TableTwoEntry:
    """
    Kernel table coefficient: linear and harmonic take ``k``; quartic takes
    ``(m, n) = (k, n)`` and uses the Δ recurrence.
    """
    try:
        system = BenchmarkSystem(system)
    except ValueError:
        raise UnknownSystemError(details={"system": str(system)}) from None

    if system is BenchmarkSystem.LINEAR:
        coefficient = Fraction(1, 4 * math.factorial(k) * math.factorial(k + 1) * 4**k)
        monomial = Monomial.kernel(u=k + 1, v=2 * k, mu=k, hbar=-2 * k, sym={"lambda": k})
        return TableTwoEntry(system, (k,), monomial, coefficient)
    if system is BenchmarkSystem.HARMONIC:
        coefficient = Fraction(1, 4 * math.factorial(2 * k + 1) * 4**k)
        monomial = Monomial.kernel(
            u=2 * k + 1, v=2 * k, mu=2 * k, hbar=-2 * k, sym={"omega": 2 * k}
        )
        return TableTwoEntry(system, (k,), monomial, coefficient)
    if system is BenchmarkSystem.QUARTIC:
        if n is None or n < 2 * k:
            raise InvalidOrderError(k, "quartic entries need n >= 2m")
        power = n - k
        coefficient = delta_table(n)[(k, n)] / (4 * 8**power)
        monomial = Monomial.kernel(
            u=4 * n + 1 - 6 * k, v=2 * n, mu=power, hbar=-2 * power, sym={"lambda": power}
        )
        return TableTwoEntry(system, (k, n), monomial, coefficient)
    raise UnknownSystemError(
        message=f"System {system.value!r} has no kernel table row",
        details={"system": system.value},
    )


@dataclass(frozen=True)
class QQTerm:
    """``coefficient * monomial * q^q_exp * q′^qp_exp``."""

    q_exp: int
    qp_exp: int
    coefficient: Fraction
    monomial: Monomial


def _binomial_pair(m: int, n: int, sign: int) -> dict[tuple[int, int], int]:
    """Expand (a + b)^m (a + sign·b)^n into {(a_exp, b_exp): integer coefficient}."""
    out: dict[tuple[int, int], int] = defaultdict(int)
    for i in range(m + 1):
        for j in range(n + 1):
            out[(m - i + n - j, i + j)] += comb(m, i) * comb(n, j) * sign**j
    return {k: v for k, v in out.items() if v}


def kernel_to_qq(kernel: TimeKernel | Series) -> list[QQTerm]:
    """Rewrite u^m v^n as (q + q′)^m (q − q′)^n, collecting like terms."""
    series = kernel.series if isinstance(kernel, TimeKernel) else kernel
    collected: dict[tuple[int, int, Monomial], Fraction] = defaultdict(Fraction)
    for monomial, coefficient in series.items():
        scalar = monomial.scalar_part()
        for (qe, qpe), count in _binomial_pair(monomial.u, monomial.v, -1).items():
            collected[(qe, qpe, scalar)] += coefficient * count
    terms = [QQTerm(qe, qpe, c, s) for (qe, qpe, s), c in collected.items() if c != 0]
    return sorted(terms, key=lambda t: (t.q_exp + t.qp_exp, -t.q_exp, t.monomial.sort_key()))


def kernel_from_qq(terms: list[QQTerm]) -> Series:
    """Inverse of kernel_to_qq: q = (u + v)/2, q′ = (u − v)/2."""
    out = []
    for term in terms:
        scale = term.coefficient / 2 ** (term.q_exp + term.qp_exp)
        for (ue, ve), count in _binomial_pair(term.q_exp, term.qp_exp, -1).items():
            out.append((term.monomial * Monomial.kernel(u=ue, v=ve), scale * count))
    return Series(Space.KERNEL, out)
