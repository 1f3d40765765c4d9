"""Canonical JSON and CSV encoding of series terms."""

import csv
import io
import json
from fractions import Fraction
from typing import Any

from toa_correspondence.algebra.monomial import SPACE_EXPONENTS, Monomial, Space
from toa_correspondence.algebra.series import Series
from toa_correspondence.errors import AlgebraError


def format_rational(value: Fraction) -> str:
    """Always ``num/den`` so the encoding is fixed-width in structure."""
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise AlgebraError(message=f"Bad rational {text!r}", details={"value": text}) from e


def encode_term(monomial: Monomial, coefficient: Fraction) -> dict[str, Any]:
    term: dict[str, Any] = {
        "coeff": format_rational(coefficient),
        "mu": monomial.mu,
        "hbar": monomial.hbar,
        "sym": dict(monomial.sym),
    }
    if monomial.space is not None:
        for name in SPACE_EXPONENTS[monomial.space]:
            term[name] = getattr(monomial, name)
    return term


def decode_term(space: Space, term: dict[str, Any]) -> tuple[Monomial, Fraction]:
    exponents = {name: int(term.get(name, 0)) for name in SPACE_EXPONENTS[space]}
    monomial = Monomial(
        space=space,
        mu=int(term.get("mu", 0)),
        hbar=int(term.get("hbar", 0)),
        sym=tuple((str(k), int(e)) for k, e in term.get("sym", {}).items()),
        **exponents,
    )
    return monomial, parse_rational(str(term["coeff"]))


def encode_series(series: Series) -> list[dict[str, Any]]:
    return [encode_term(m, c) for m, c in series.items()]


def decode_series(space: Space, terms: list[dict[str, Any]]) -> Series:
    return Series(space, [decode_term(space, term) for term in terms])


def dumps(payload: Any) -> str:
    """Deterministic JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def series_to_csv(series: Series, extra: dict[str, Any] | None = None) -> str:
    """One row per term; ``extra`` columns are prepended to every row."""
    extra = extra or {}
    symbols = sorted({name for m, _ in series.items() for name, _ in m.sym})
    header = [
        *extra,
        "coeff",
        "mu",
        "hbar",
        *SPACE_EXPONENTS[series.space],
        *(f"sym_{s}" for s in symbols),
    ]
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for monomial, coefficient in series.items():
        sym = monomial.sym_map
        writer.writerow(
            [
                *extra.values(),
                format_rational(coefficient),
                monomial.mu,
                monomial.hbar,
                *(getattr(monomial, n) for n in SPACE_EXPONENTS[series.space]),
                *(sym.get(s, 0) for s in symbols),
            ]
        )
    return buffer.getvalue()
