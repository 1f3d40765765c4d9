"""Exact sparse series over the rationals."""

from __future__ import annotations

import math
from collections.abc import Callable, Iterable, Iterator, Mapping
from fractions import Fraction

from toa_correspondence.algebra.monomial import ONE, Monomial, Space
from toa_correspondence.errors import SpaceMismatchError

Rational = Fraction


class Series:
    """
    Immutable sum of terms ``coefficient * monomial`` in one space.

    Zero coefficients are never stored, so two series are equal exactly when
    their term maps are equal. Iteration follows the canonical monomial order.
    """

    __slots__ = ("_space", "_terms", "_hash")

    def __init__(
        self,
        space: Space,
        terms: Mapping[Monomial, Fraction] | Iterable[tuple[Monomial, Fraction]] = (),
    ):
        self._space = space
        items = terms.items() if isinstance(terms, Mapping) else terms
        accumulated: dict[Monomial, Fraction] = {}
        for monomial, coefficient in items:
            key = monomial.in_space(space)
            accumulated[key] = accumulated.get(key, Fraction(0)) + Fraction(coefficient)
        self._terms = {m: c for m, c in accumulated.items() if c != 0}
        self._hash: int | None = None

    @classmethod
    def zero(cls, space: Space) -> Series:
        return cls(space)

    @classmethod
    def term(cls, coefficient: Fraction | int, monomial: Monomial) -> Series:
        if monomial.space is None:
            raise SpaceMismatchError("scalar", "series")
        return cls(monomial.space, [(monomial, Fraction(coefficient))])

    @property
    def space(self) -> Space:
        return self._space

    def items(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in canonical order."""
        return sorted(self._terms.items(), key=lambda item: item[0].sort_key())

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, monomial: Monomial) -> Fraction:
        return self._terms.get(monomial.in_space(self._space), Fraction(0))

    def _check_space(self, other: Series) -> None:
        if other._space is not self._space:
            raise SpaceMismatchError(self._space.value, other._space.value)

    def __add__(self, other: Series) -> Series:
        self._check_space(other)
        return Series(self._space, [*self._terms.items(), *other._terms.items()])

    def __neg__(self) -> Series:
        return Series(self._space, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: Series) -> Series:
        return self + (-other)

    def __mul__(self, other: Series) -> Series:
        self._check_space(other)
        return Series(
            self._space,
            [
                (m1 * m2, c1 * c2)
                for m1, c1 in self._terms.items()
                for m2, c2 in other._terms.items()
            ],
        )

    def scale(self, coefficient: Fraction | int, monomial: Monomial = ONE) -> Series:
        """Multiply every term by ``coefficient * monomial``."""
        coefficient = Fraction(coefficient)
        if coefficient == 0:
            return Series(self._space)
        monomial = monomial.in_space(self._space) if monomial.space else monomial
        return Series(
            self._space, [(m * monomial, c * coefficient) for m, c in self._terms.items()]
        )

    def select(self, predicate: Callable[[Monomial], bool]) -> Series:
        return Series(self._space, [(m, c) for m, c in self._terms.items() if predicate(m)])

    def filter_hbar(self, predicate: Callable[[int], bool]) -> Series:
        return self.select(lambda m: predicate(m.hbar))

    def map_terms(
        self,
        transform: Callable[[Monomial, Fraction], Iterable[tuple[Monomial, Fraction]]],
        space: Space | None = None,
    ) -> Series:
        """Apply a termwise rule that may emit several terms, possibly in another space."""
        target = space or self._space
        return Series(
            target, [out for m, c in self._terms.items() for out in transform(m, c)]
        )

    def hbar_orders(self) -> set[int]:
        return {m.hbar for m in self._terms}

    def evaluate(
        self,
        assignment: Mapping[str, float],
        point: Mapping[str, float],
        mu: float,
        hbar: float = 0.0,
    ) -> float:
        return math.fsum(
            float(c) * m.evaluate(assignment, point, mu, hbar) for m, c in self._terms.items()
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self._space is other._space and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._space, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Series({self._space.value}, {self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for monomial, coefficient in self.items():
            sign = "-" if coefficient < 0 else "+"
            magnitude = abs(coefficient)
            body = monomial.render()
            if magnitude != 1:
                body = f"{magnitude}*{body}" if body != "1" else str(magnitude)
            parts.append(f"{sign} {body}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def series_add(a: Series, b: Series) -> Series:
    """Termwise sum in canonical form."""
    return a + b


def series_scale_mono(a: Series, c: Fraction | int, m: Monomial) -> Series:
    """Multiply every term of ``a`` by ``c * m``."""
    return a.scale(c, m)


def series_equal(a: Series, b: Series) -> bool:
    return a == b


def filter_hbar(a: Series, predicate: Callable[[int], bool]) -> Series:
    """Keep exactly the terms whose ħ exponent satisfies ``predicate``."""
    return a.filter_hbar(predicate)


def evaluate(
    a: Series,
    assignment: Mapping[str, float],
    point: Mapping[str, float],
    mu: float,
    hbar: float = 0.0,
) -> float:
    """Floating evaluation; the only lossy series operation."""
    return a.evaluate(assignment, point, mu, hbar)
