"""Polynomial potentials, their derivative and the kernel-equation difference polynomial."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Any

import numpy as np
from numpy.polynomial import Polynomial

from toa_correspondence.algebra import RESERVED_SYMBOLS, Monomial, Series, Space
from toa_correspondence.algebra.codec import format_rational, parse_rational
from toa_correspondence.errors import PotentialParseError

_NUMBER = re.compile(r"^\d+(?:/\d+)?$")
_FACTOR = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(\d+))?$")


@dataclass(frozen=True)
class PotentialTerm:
    """``coefficient * monomial * q^degree`` with ``monomial`` free of ħ and coordinates."""

    degree: int
    coefficient: Fraction
    monomial: Monomial

    def scaled(self, factor: Fraction, degree: int) -> PotentialTerm:
        return PotentialTerm(degree, self.coefficient * factor, self.monomial)


@dataclass(frozen=True)
class PolynomialPotential:
    """V(q) as a sum of distinct-degree terms without a constant."""

    terms: tuple[PotentialTerm, ...] = ()
    source: str = ""

    def __post_init__(self) -> None:
        degrees = [t.degree for t in self.terms]
        if len(set(degrees)) != len(degrees):
            raise PotentialParseError(self.source or str(self), "duplicate degree")
        for term in self.terms:
            if term.degree < 1:
                raise PotentialParseError(self.source or str(self), "degree must be >= 1")
            if term.monomial.hbar != 0:
                raise PotentialParseError(self.source or str(self), "ħ may not appear in V")
            if term.monomial.space is not None:
                raise PotentialParseError(self.source or str(self), "coordinates in coefficient")
        kept = (t for t in self.terms if t.coefficient != 0)
        ordered = tuple(sorted(kept, key=lambda t: t.degree))
        object.__setattr__(self, "terms", ordered)

    @property
    def max_degree(self) -> int:
        return max((t.degree for t in self.terms), default=0)

    @property
    def is_linear_system(self) -> bool:
        """Degree ≤ 2: linear classical equations of motion."""
        return self.max_degree <= 2

    @property
    def is_even(self) -> bool:
        return all(t.degree % 2 == 0 for t in self.terms)

    @property
    def symbols(self) -> set[str]:
        return {name for t in self.terms for name, _ in t.monomial.sym}

    def coefficient_values(self, params: dict[str, float], mu: float) -> dict[int, float]:
        """Numeric coefficient of each degree."""
        return {
            t.degree: float(t.coefficient) * t.monomial.evaluate(params, {}, mu, 0.0)
            for t in self.terms
        }

    def as_numpy(self, params: dict[str, float], mu: float) -> Polynomial:
        coefficients = np.zeros(self.max_degree + 1)
        for degree, value in self.coefficient_values(params, mu).items():
            coefficients[degree] = value
        return Polynomial(coefficients)

    def evaluate(self, q: float, params: dict[str, float], mu: float) -> float:
        return float(self.as_numpy(params, mu)(q))

    def to_json(self) -> list[dict[str, Any]]:
        return [
            {
                "degree": t.degree,
                "coeff": format_rational(t.coefficient),
                "mu": t.monomial.mu,
                "sym": dict(t.monomial.sym),
            }
            for t in self.terms
        ]

    @classmethod
    def from_json(cls, data: list[dict[str, Any]]) -> PolynomialPotential:
        return cls(
            tuple(
                PotentialTerm(
                    int(item["degree"]),
                    parse_rational(str(item["coeff"])),
                    Monomial.scalar(mu=int(item.get("mu", 0)), sym=item.get("sym", {})),
                )
                for item in data
            )
        )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for t in self.terms:
            factors = []
            magnitude = abs(t.coefficient)
            if magnitude != 1:
                factors.append(str(magnitude))
            if t.monomial.mu:
                factors.append("mu" if t.monomial.mu == 1 else f"mu^{t.monomial.mu}")
            factors += [n if e == 1 else f"{n}^{e}" for n, e in t.monomial.sym]
            factors.append("q" if t.degree == 1 else f"q^{t.degree}")
            parts.append(("-" if t.coefficient < 0 else "+") + "*".join(factors))
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text


def parse_potential(text: str) -> PolynomialPotential:
    """
    Parse ``term (+|-) term ...`` where a term is ``[rational] [* symbol[^int]]* * q^deg``.

    ``0`` is the free particle. Raises PotentialParseError on malformed input,
    constant terms, degree < 1 and duplicate degrees.
    """
    compact = "".join(text.split())
    if not compact:
        raise PotentialParseError(text, "empty potential")
    if compact == "0":
        return PolynomialPotential((), source=text)

    chunks = re.split(r"([+-])", compact)
    sign = 1
    terms: list[PotentialTerm] = []
    expecting_term = True
    for chunk in chunks:
        if chunk in ("+", "-"):
            expecting_term = True
            if chunk == "-":
                sign = -sign
            continue
        if not chunk:
            continue
        terms.append(_parse_term(text, chunk, sign))
        expecting_term = False
        sign = 1
    if expecting_term:
        raise PotentialParseError(text, "dangling sign")

    degrees = [t.degree for t in terms]
    if len(set(degrees)) != len(degrees):
        raise PotentialParseError(text, "duplicate degree")
    return PolynomialPotential(tuple(terms), source=text)


def _parse_term(text: str, chunk: str, sign: int) -> PotentialTerm:
    coefficient = Fraction(sign)
    mu = 0
    symbols: dict[str, int] = {}
    degree: int | None = None
    for factor in chunk.split("*"):
        if not factor:
            raise PotentialParseError(text, f"empty factor in {chunk!r}")
        if _NUMBER.match(factor):
            try:
                coefficient *= Fraction(factor)
            except ZeroDivisionError:
                raise PotentialParseError(text, f"zero denominator in {factor!r}") from None
            continue
        match = _FACTOR.match(factor)
        if match is None:
            raise PotentialParseError(text, f"unrecognised factor {factor!r}")
        name, exp_text = match.group(1), match.group(2)
        exponent = int(exp_text) if exp_text is not None else 1
        if name == "q":
            degree = (degree or 0) + exponent
        elif name == "mu":
            mu += exponent
        elif name in RESERVED_SYMBOLS:
            raise PotentialParseError(text, f"{name!r} may not appear in a potential")
        else:
            symbols[name] = symbols.get(name, 0) + exponent
    if degree is None:
        raise PotentialParseError(text, f"constant term {chunk!r} is not allowed")
    if degree < 1:
        raise PotentialParseError(text, f"degree must be >= 1 in {chunk!r}")
    return PotentialTerm(degree, coefficient, Monomial.scalar(mu=mu, sym=symbols))


def derivative(potential: PolynomialPotential) -> list[PotentialTerm]:
    """dV/dq termwise; degree-0 terms are allowed in the result."""
    return [t.scaled(Fraction(t.degree), t.degree - 1) for t in potential.terms]


def antiderivative(terms: list[PotentialTerm]) -> PolynomialPotential:
    """∫ dq of a term list, with zero integration constant."""
    return PolynomialPotential(
        tuple(t.scaled(Fraction(1, t.degree + 1), t.degree + 1) for t in terms)
    )


@dataclass(frozen=True)
class DifferencePoly:
    """D(u, v) = V((u+v)/2) − V((u−v)/2) as a kernel-space series."""

    series: Series

    def entries(self) -> list[tuple[int, int, Fraction, Monomial]]:
        """(u-degree, v-degree, coefficient, coefficient monomial) in canonical order."""
        return [(m.u, m.v, c, m.scalar_part()) for m, c in self.series.items()]

    def coefficient(self, a: int, b: int) -> tuple[Fraction, Monomial] | None:
        for u, v, c, m in self.entries():
            if (u, v) == (a, b):
                return c, m
        return None

    def evaluate(self, u: float, v: float, params: dict[str, float], mu: float) -> float:
        return self.series.evaluate(params, {"u": u, "v": v}, mu)


def difference_poly(potential: PolynomialPotential) -> DifferencePoly:
    """Expand V((u+v)/2) − V((u−v)/2) exactly; only odd v-degrees survive."""
    terms = []
    for t in potential.terms:
        j = t.degree
        for b in range(1, j + 1, 2):
            coefficient = t.coefficient * Fraction(2) ** (1 - j) * comb(j, b)
            monomial = t.monomial * Monomial.kernel(u=j - b, v=b)
            terms.append((monomial, coefficient))
    return DifferencePoly(Series(Space.KERNEL, terms))
