"""Exception hierarchy shared by the whole package."""

from __future__ import annotations


class TwinPropError(Exception):
    """Base class for every error raised by :mod:`twinprop`."""


class ResourceLimitError(TwinPropError):
    """A Groebner computation exceeded the configured basis-size or degree bound."""

    def __init__(self, what: str, limit: int, observed: int):
        super().__init__(f"{what} limit {limit} exceeded (observed {observed})")
        self.what = what
        self.limit = limit
        self.observed = observed


class NormalizationFailed(TwinPropError):
    """The deterministic shear search ran out of candidates."""


class RegularValueRequired(TwinPropError):
    """A specialized check was requested at a branch value."""


class NotLocalError(TwinPropError):
    """An element has a denominator vanishing at x = 0."""


class LiftingError(TwinPropError):
    """Newton lifting met a non-invertible leading coefficient."""
