"""Sparse monomials in μ, ħ, named parameters and one coordinate space."""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass, field, replace
from enum import Enum

from toa_correspondence.errors import (
    ExponentDomainError,
    SingularEvaluationError,
    SpaceMismatchError,
)

# Names with a fixed meaning; they cannot be used as potential parameters.
RESERVED_SYMBOLS = frozenset({"mu", "hbar", "q", "x", "p", "u", "v"})


class Space(str, Enum):
    """Coordinate space a series lives in."""

    PHASE = "phase"
    KERNEL = "kernel"


SPACE_EXPONENTS: dict[Space, tuple[str, ...]] = {
    Space.PHASE: ("q", "x", "pinv"),
    Space.KERNEL: ("u", "v"),
}
_ALL_SPACE_EXPONENTS = ("q", "x", "pinv", "u", "v")


def _space_rank(space: Space | None) -> int:
    return {None: 0, Space.PHASE: 1, Space.KERNEL: 2}[space]


@dataclass(frozen=True)
class Monomial:
    """
    Product μ^mu · ħ^hbar · ∏ s^e · (space variables).

    A monomial with ``space=None`` is a pure coefficient monomial and can
    multiply into either space. Only ``hbar`` may be negative.
    """

    space: Space | None = None
    mu: int = 0
    hbar: int = 0
    sym: tuple[tuple[str, int], ...] = field(default=())
    q: int = 0
    x: int = 0
    pinv: int = 0
    u: int = 0
    v: int = 0

    def __post_init__(self) -> None:
        if self.mu < 0:
            raise ExponentDomainError(
                message=f"Negative power of μ: {self.mu}", details={"mu": self.mu}
            )
        allowed = SPACE_EXPONENTS.get(self.space, ()) if self.space else ()
        for name in _ALL_SPACE_EXPONENTS:
            value = getattr(self, name)
            if value < 0:
                raise ExponentDomainError(
                    message=f"Negative exponent for {name}: {value}",
                    details={name: value},
                )
            if value and name not in allowed:
                raise SpaceMismatchError(
                    str(self.space.value if self.space else "scalar"), f"{name}-carrying"
                )
        merged: dict[str, int] = {}
        for name, exp in self.sym:
            merged[name] = merged.get(name, 0) + exp
        if any(exp < 0 for exp in merged.values()):
            raise ExponentDomainError(
                message="Negative power of a parameter symbol", details={"sym": merged}
            )
        object.__setattr__(
            self, "sym", tuple(sorted((n, e) for n, e in merged.items() if e != 0))
        )

    @classmethod
    def scalar(
        cls, mu: int = 0, hbar: int = 0, sym: Mapping[str, int] | None = None
    ) -> Monomial:
        """Build a coefficient monomial."""
        return cls(space=None, mu=mu, hbar=hbar, sym=tuple((sym or {}).items()))

    @classmethod
    def phase(
        cls,
        q: int = 0,
        pinv: int = 0,
        x: int = 0,
        mu: int = 0,
        hbar: int = 0,
        sym: Mapping[str, int] | None = None,
    ) -> Monomial:
        return cls(
            space=Space.PHASE,
            mu=mu,
            hbar=hbar,
            sym=tuple((sym or {}).items()),
            q=q,
            x=x,
            pinv=pinv,
        )

    @classmethod
    def kernel(
        cls,
        u: int = 0,
        v: int = 0,
        mu: int = 0,
        hbar: int = 0,
        sym: Mapping[str, int] | None = None,
    ) -> Monomial:
        return cls(
            space=Space.KERNEL,
            mu=mu,
            hbar=hbar,
            sym=tuple((sym or {}).items()),
            u=u,
            v=v,
        )

    @property
    def sym_map(self) -> dict[str, int]:
        return dict(self.sym)

    def scalar_part(self) -> Monomial:
        """The μ/ħ/parameter factor, stripped of coordinates."""
        return Monomial(space=None, mu=self.mu, hbar=self.hbar, sym=self.sym)

    def in_space(self, space: Space) -> Monomial:
        if self.space is space:
            return self
        if self.space is not None:
            raise SpaceMismatchError(self.space.value, space.value)
        return replace(self, space=space)

    def shift(self, **deltas: int) -> Monomial:
        """Add integer deltas to named exponents (``mu``, ``hbar``, ``q``, ...)."""
        updates = {name: getattr(self, name) + delta for name, delta in deltas.items()}
        return replace(self, **updates)

    def __mul__(self, other: Monomial) -> Monomial:
        if self.space is not None and other.space is not None and self.space is not other.space:
            raise SpaceMismatchError(self.space.value, other.space.value)
        space = self.space or other.space
        return Monomial(
            space=space,
            mu=self.mu + other.mu,
            hbar=self.hbar + other.hbar,
            sym=self.sym + other.sym,
            q=self.q + other.q,
            x=self.x + other.x,
            pinv=self.pinv + other.pinv,
            u=self.u + other.u,
            v=self.v + other.v,
        )

    def sort_key(self) -> tuple[object, ...]:
        """Total order: space, then p/v grade, coordinates, ħ, μ, parameters."""
        return (
            _space_rank(self.space),
            self.pinv,
            self.v,
            self.q,
            self.u,
            self.x,
            self.hbar,
            self.mu,
            self.sym,
        )

    def evaluate(
        self,
        assignment: Mapping[str, float],
        point: Mapping[str, float],
        mu: float,
        hbar: float,
    ) -> float:
        """Floating value of the monomial; raises on poles and missing values."""
        value = 1.0
        if self.mu:
            value *= mu**self.mu
        if self.hbar:
            if hbar == 0 and self.hbar < 0:
                raise SingularEvaluationError(
                    message="ħ = 0 with a negative power of ħ", details={"hbar": self.hbar}
                )
            value *= hbar**self.hbar
        for name, exp in self.sym:
            if name not in assignment:
                raise SingularEvaluationError(
                    message=f"No value given for parameter {name!r}", details={"symbol": name}
                )
            value *= assignment[name] ** exp
        for name in ("q", "x", "u", "v"):
            exp = getattr(self, name)
            if exp:
                value *= _coordinate(point, name) ** exp
        if self.pinv:
            p = _coordinate(point, "p")
            if p == 0:
                raise SingularEvaluationError(
                    message="Momentum p = 0 with an inverse power of p",
                    details={"pinv": self.pinv},
                )
            value /= p**self.pinv
        return value

    def render(self) -> str:
        """Human-readable product, e.g. ``mu^2*lambda*q^5/p^3``."""
        factors: list[str] = []
        numeric = [("mu", self.mu), ("hbar", self.hbar), *self.sym]
        numeric += [(n, getattr(self, n)) for n in ("q", "x", "u", "v")]
        for name, exp in numeric:
            if exp == 1:
                factors.append(name)
            elif exp:
                factors.append(f"{name}^{exp}")
        text = "*".join(factors) or "1"
        if self.pinv:
            text += "/p" if self.pinv == 1 else f"/p^{self.pinv}"
        return text


def _coordinate(point: Mapping[str, float], name: str) -> float:
    try:
        value = point[name]
    except KeyError:
        raise SingularEvaluationError(
            message=f"No value given for coordinate {name!r}", details={"coordinate": name}
        ) from None
    if not math.isfinite(value):
        raise SingularEvaluationError(
            message=f"Non-finite value for {name!r}", details={"coordinate": name}
        )
    return value


ONE = Monomial.scalar()
