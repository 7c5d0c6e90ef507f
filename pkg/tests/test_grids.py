"""Grid construction, defaults, and validation."""

from __future__ import annotations

import math

import pytest

from pairspec import (
    BaselineGrid,
    Family,
    GridKind,
    GridSpec,
    Variant,
    default_baseline_grid,
    default_grid,
    log_freq_grid,
    radial_grid,
)


def test_default_log_grid_shape_orientation():
    g = default_grid(Family.LOG_FREQ, Variant.LOCATION_ORIENTATION)
    assert g.kind is GridKind.LOG_POLAR_FREQ
    qs = g.q_values
    assert len(qs) == 48
    assert min(qs) == -24 and max(qs) == 24
    assert 0 not in qs
    assert len(g.radial_values) == 32
    assert g.radial_values[0] == 0.2 and g.radial_values[-1] == 37.7
    assert g.size == 1536


def test_default_log_grid_location_even_only():
    g = default_grid(Family.LOG_FREQ, Variant.LOCATION)
    qs = g.q_values
    assert all(q % 2 == 0 for q in qs)
    assert len(qs) == 24
    assert g.size == 768


def test_default_radial_grid_narrow_vs_wide():
    narrow = default_grid(Family.RADIAL, Variant.LOCATION_ORIENTATION, 256)
    wide = default_grid(Family.RADIAL, Variant.LOCATION_ORIENTATION, 326)
    assert narrow.radial_values[0] == 16.0 and narrow.radial_values[-1] == 130.0
    assert len(narrow.radial_values) == 20
    assert wide.radial_values[-1] == 160.0
    assert len(wide.radial_values) == 25
    assert narrow.size == 320
    assert wide.size == 400
    assert narrow.sigma == wide.sigma == 2.3


def test_default_radial_grid_location_even_only():
    g = default_grid(Family.RADIAL, Variant.LOCATION, 256)
    qs = g.q_values
    assert qs == (2, 4, 6, 8, 10, 12, 14, 16)
    assert g.size == 160


def test_default_radial_grid_positive_q_only():
    g = default_grid(Family.RADIAL, Variant.LOCATION_ORIENTATION, 256)
    assert g.q_values == tuple(range(1, 17))


def test_default_grid_width_boundary():
    assert len(default_grid(Family.RADIAL, Variant.LOCATION, 325).radial_values) == 20
    assert len(default_grid(Family.RADIAL, Variant.LOCATION, 326).radial_values) == 25


def test_default_grid_rejects_magnitude_family():
    with pytest.raises(ValueError):
        default_grid(Family.MAGNITUDE, Variant.LOCATION)


def test_grid_spec_rejects_zero_q():
    with pytest.raises(ValueError):
        GridSpec(GridKind.LOG_POLAR_FREQ, (0, 1), (0.5, 1.0))


def test_grid_spec_rejects_duplicate_q():
    with pytest.raises(ValueError):
        GridSpec(GridKind.LOG_POLAR_FREQ, (1, 1), (0.5, 1.0))


def test_grid_spec_requires_increasing_radial():
    with pytest.raises(ValueError):
        GridSpec(GridKind.LOG_POLAR_FREQ, (1, 2), (1.0, 0.5))


def test_radial_grid_requires_sigma():
    with pytest.raises(ValueError):
        GridSpec(GridKind.RADIAL_DIRECT, (1, 2), (10.0, 20.0))
    with pytest.raises(ValueError):
        GridSpec(GridKind.RADIAL_DIRECT, (1, 2), (10.0, 20.0), sigma=0.0)


def test_log_grid_rejects_sigma():
    with pytest.raises(ValueError):
        GridSpec(GridKind.LOG_POLAR_FREQ, (1, 2), (0.5, 1.0), sigma=2.0)


def test_with_negative_q_extends_symmetrically():
    g = GridSpec(GridKind.RADIAL_DIRECT, (1, 2, 3), (10.0, 20.0), 2.3)
    ext = g.with_negative_q()
    assert ext.q_values == (-3, -2, -1, 1, 2, 3)
    assert ext.radial_values == g.radial_values
    # already symmetric -> unchanged
    assert ext.with_negative_q().q_values == ext.q_values


def test_family_property():
    assert log_freq_grid(Variant.LOCATION).family is Family.LOG_FREQ
    assert radial_grid(Variant.LOCATION).family is Family.RADIAL


def test_constructors_reject_bad_sigma():
    with pytest.raises(ValueError):
        radial_grid(Variant.LOCATION, sigma=-1.0)


def test_default_baseline_grid_shape():
    g = default_baseline_grid()
    assert len(g.alpha_values) == 128
    assert len(g.beta_values) == 256
    assert g.alpha_values[0] == pytest.approx(math.log(0.02))
    assert g.alpha_values[-1] == pytest.approx(math.log(1.2))
    assert g.sigma == 2.3
    assert g.size == 32768


def test_baseline_grid_betas_must_be_uniform_circle():
    alphas = (0.0, 1.0)
    with pytest.raises(ValueError):
        BaselineGrid(alphas, (0.0, 1.0, 2.0), 1.0)  # not spokes of 2*pi/3


def test_baseline_grid_beta_step():
    g = default_baseline_grid()
    assert g.beta_step == pytest.approx(2.0 * math.pi / 256)
