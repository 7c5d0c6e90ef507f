"""Scikit-learn style wrappers around the template kernels.

These let minutia sets ride standard sklearn plumbing: each transformer
turns a sequence of MinutiaSet objects into a fixed-width feature matrix
(complex for pair spectra, real for the baseline), so downstream estimators,
pipelines, and grid search compose as usual.
"""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

import numpy as np

from .baseline import compute_magnitude_spectrum
from .grids import BaselineGrid, Family, GridSpec, Variant, default_baseline_grid, default_grid
from .minutiae import MinutiaSet, filter_quality
from .spectral import compute_spectrum


def _check_minutia_sets(X) -> list[MinutiaSet]:
    if isinstance(X, MinutiaSet):
        raise TypeError("X must be a sequence of MinutiaSet objects, not a single set")
    sets = list(X)
    if not sets:
        raise ValueError("X must contain at least one MinutiaSet")
    for i, s in enumerate(sets):
        if not isinstance(s, MinutiaSet):
            raise TypeError(f"X[{i}] is not a MinutiaSet: {s!r}")
    return sets


class PairSpectrum(BaseEstimator, TransformerMixin):
    """Transform minutia sets into pair-spectrum feature rows.

    Parameters:
        family: "M" (direct radial grid) or "L" (log-frequency grid), or the
            corresponding Family member.
        variant: "location" or "location_orientation", or a Variant member.
        grid: Explicit GridSpec; when None, fit derives the default grid for
            the family/variant from the first sample's image width.
        min_quality: Minutiae below this quality are dropped before pairing.

    After fit, transform maps a sequence of n MinutiaSet objects to an
    (n, grid_.size) complex matrix, rows in row-major grid order.
    """

    def __init__(
        self,
        family: str | Family = "M",
        variant: str | Variant = "location_orientation",
        grid: GridSpec | None = None,
        min_quality: int = 45,
    ):
        self.family = family
        self.variant = variant
        self.grid = grid
        self.min_quality = min_quality

    def _resolved(self) -> tuple[Family, Variant]:
        family = self.family if isinstance(self.family, Family) else Family(str(self.family))
        variant = self.variant if isinstance(self.variant, Variant) else Variant(str(self.variant))
        if family is Family.MAGNITUDE:
            raise ValueError("family 'G' is the baseline; use MagnitudeSpectrum")
        return family, variant

    def fit(self, X, y=None):
        sets = _check_minutia_sets(X)
        family, variant = self._resolved()
        if self.grid is not None:
            if self.grid.family is not family:
                raise ValueError("explicit grid does not belong to the chosen family")
            self.grid_ = self.grid
        else:
            self.grid_ = default_grid(family, variant, sets[0].image_width)
        self.n_features_ = self.grid_.size
        return self

    def transform(self, X) -> np.ndarray:
        if not hasattr(self, "grid_"):
            raise NotFittedError("PairSpectrum must be fitted before transform")
        sets = _check_minutia_sets(X)
        family, variant = self._resolved()
        rows = []
        for s in sets:
            filtered = filter_quality(s, self.min_quality)
            rows.append(compute_spectrum(filtered, family, variant, self.grid_).flattened())
        return np.stack(rows)


class MagnitudeSpectrum(BaseEstimator, TransformerMixin):
    """Transform minutia sets into baseline magnitude-spectrum rows.

    Parameters mirror PairSpectrum where they apply; the grid is a
    BaselineGrid and the output matrix is real with one row per sample.
    """

    def __init__(
        self,
        variant: str | Variant = "location",
        grid: BaselineGrid | None = None,
        min_quality: int = 0,
    ):
        self.variant = variant
        self.grid = grid
        self.min_quality = min_quality

    def fit(self, X, y=None):
        _check_minutia_sets(X)
        self.grid_ = self.grid if self.grid is not None else default_baseline_grid()
        self.n_features_ = self.grid_.size
        return self

    def transform(self, X) -> np.ndarray:
        if not hasattr(self, "grid_"):
            raise NotFittedError("MagnitudeSpectrum must be fitted before transform")
        sets = _check_minutia_sets(X)
        variant = self.variant if isinstance(self.variant, Variant) else Variant(str(self.variant))
        rows = []
        for s in sets:
            filtered = filter_quality(s, self.min_quality)
            rows.append(compute_magnitude_spectrum(filtered, self.grid_, variant).ravel())
        return np.stack(rows)
