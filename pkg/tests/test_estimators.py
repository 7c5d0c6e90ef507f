"""Estimator facade: parameter handling and batch transforms."""

from __future__ import annotations

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from pairspec import (
    Family,
    MagnitudeSpectrum,
    PairSpectrum,
    Variant,
    compute_radial_spectrum,
    default_grid,
    filter_quality,
    log_freq_grid,
)

from conftest import random_minutia_set


def batch(rng, n=4, z=12):
    return [random_minutia_set(rng, z) for _ in range(n)]


def test_get_set_params_round_trip():
    est = PairSpectrum(family="L", min_quality=60)
    params = est.get_params()
    assert params["family"] == "L"
    est2 = PairSpectrum().set_params(**params)
    assert est2.get_params() == params


def test_clone_preserves_params():
    est = PairSpectrum(family="L", variant="location", min_quality=50)
    c = clone(est)
    assert c.get_params() == est.get_params()


def test_fit_infers_grid_from_first_set(rng):
    X = batch(rng)
    est = PairSpectrum().fit(X)
    # 326-wide captures get the wide radial grid
    assert est.grid_.radial_values[-1] == 160.0
    assert est.n_features_ == est.grid_.size


def test_transform_shape_and_dtype(rng):
    X = batch(rng, n=5)
    est = PairSpectrum().fit(X)
    M = est.transform(X)
    assert M.shape == (5, est.n_features_)
    assert M.dtype == np.complex128


def test_transform_rows_match_direct_computation(rng):
    X = batch(rng, n=3)
    est = PairSpectrum(variant="location_orientation", min_quality=45).fit(X)
    M = est.transform(X)
    t = compute_radial_spectrum(
        filter_quality(X[1], 45), Variant.LOCATION_ORIENTATION, est.grid_
    )
    assert np.array_equal(M[1], t.flattened())


def test_fit_transform_shortcut(rng):
    X = batch(rng)
    M = PairSpectrum().fit_transform(X)
    assert M.shape[0] == len(X)


def test_transform_before_fit_raises(rng):
    with pytest.raises(NotFittedError):
        PairSpectrum().transform(batch(rng))


def test_explicit_grid_wins(rng):
    g = log_freq_grid(Variant.LOCATION)
    est = PairSpectrum(family="L", variant="location", grid=g).fit(batch(rng))
    assert est.grid_ == g


def test_grid_family_mismatch_rejected(rng):
    g = default_grid(Family.RADIAL, Variant.LOCATION, 326)
    est = PairSpectrum(family="L", variant="location", grid=g)
    with pytest.raises(ValueError):
        est.fit(batch(rng))


def test_magnitude_family_not_available_here(rng):
    with pytest.raises(ValueError):
        PairSpectrum(family="G").fit(batch(rng))


def test_rejects_bare_minutia_set(rng):
    s = random_minutia_set(rng, 8)
    with pytest.raises((TypeError, ValueError)):
        PairSpectrum().fit(s)


def test_rejects_empty_batch():
    with pytest.raises(ValueError):
        PairSpectrum().fit([])


def test_unknown_family_string(rng):
    with pytest.raises(ValueError):
        PairSpectrum(family="Z").fit(batch(rng))


def test_magnitude_estimator_real_output(rng):
    X = batch(rng, n=3)
    est = MagnitudeSpectrum().fit(X)
    M = est.transform(X)
    assert M.shape == (3, 32768)
    assert M.dtype == np.float64
    assert np.all(M >= 0.0)


def test_magnitude_estimator_params():
    est = MagnitudeSpectrum(variant="location_orientation", min_quality=45)
    assert clone(est).get_params() == est.get_params()
