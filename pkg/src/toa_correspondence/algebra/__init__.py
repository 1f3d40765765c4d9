"""Exact rational series substrate."""

from toa_correspondence.algebra.monomial import ONE, RESERVED_SYMBOLS, Monomial, Space
from toa_correspondence.algebra.series import (
    Rational,
    Series,
    evaluate,
    filter_hbar,
    series_add,
    series_equal,
    series_scale_mono,
)

__all__ = [
    "ONE",
    "RESERVED_SYMBOLS",
    "Monomial",
    "Rational",
    "Series",
    "Space",
    "evaluate",
    "filter_hbar",
    "series_add",
    "series_equal",
    "series_scale_mono",
]
