"""Pair-based spectral templates.

A template is a fixed-length complex matrix indexed by (q, radial) grid
points. Each entry sums one unit-modulus (or Gaussian-weighted) term per
admissible ordered minutia pair, built from the pair's relative geometry
only, which makes every entry invariant under translation of the whole set.

For a location-only variant all entries at odd q vanish identically: the two
orderings of a pair contribute phases that differ by q*pi, so their terms
cancel when q is odd.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import InsufficientMinutiaeError, UnsupportedTransformError
from .grids import Family, GridKind, GridSpec, Variant
from .minutiae import MinutiaSet, PairGeometry, pair_arrays

PairWeight = Callable[[int, int, PairGeometry], float]


@dataclass(frozen=True)
class SpectralTemplate:
    """A pair-spectrum evaluation on a grid.

    values[i, j] holds the spectrum at (q_values[i], radial_values[j]). The
    array is complex128, shaped like the grid, and read-only. source is a
    free-form origin label excluded from equality.
    """

    grid: GridSpec
    variant: Variant
    values: np.ndarray
    source: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        arr = np.array(self.values, dtype=np.complex128)
        if arr.shape != self.grid.shape:
            raise ValueError(
                f"values shape {arr.shape} does not match grid shape {self.grid.shape}"
            )
        if not np.all(np.isfinite(arr.view(float))):
            raise ValueError("template values must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpectralTemplate):
            return NotImplemented
        return (
            self.grid == other.grid
            and self.variant == other.variant
            and np.array_equal(self.values, other.values)
        )

    __hash__ = None  # type: ignore[assignment]

    @property
    def family(self) -> Family:
        return self.grid.family

    def flattened(self) -> np.ndarray:
        """Row-major feature vector over grid points."""
        return self.values.ravel()


def _pair_terms(
    s: MinutiaSet,
    variant: Variant,
    pair_weight: PairWeight | None,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(r, phi, per-pair weight-adjusted orientation phase carrier) arrays."""
    a_idx, b_idx, r, phi, dtheta = pair_arrays(s)
    if r.size == 0:
        raise InsufficientMinutiaeError(
            f"no admissible pairs among {len(s)} minutiae"
        )
    if pair_weight is None:
        weights = None
    else:
        weights = np.array(
            [
                float(pair_weight(int(a), int(b), PairGeometry(rr, pp)))
                for a, b, rr, pp in zip(a_idx, b_idx, r, phi)
            ]
        )
    dt = dtheta if variant is Variant.LOCATION_ORIENTATION else None
    return r, phi, _angular_factor(phi, dt, weights)


def _angular_factor(phi, dtheta, weights):
    """Closure mapping a q array to the (n_q, n_pairs) angular factor matrix."""

    def build(q: np.ndarray) -> np.ndarray:
        phase = np.outer(q, phi)
        if dtheta is not None:
            phase = phase + dtheta[None, :]
        mat = np.exp(1j * phase)
        if weights is not None:
            mat *= weights[None, :]
        return mat

    return build


def compute_log_spectrum(
    s: MinutiaSet,
    variant: Variant,
    grid: GridSpec,
    pair_weight: PairWeight | None = None,
    source: str = "",
) -> SpectralTemplate:
    """Pair spectrum on a log-frequency grid.

    Entry (q, w) sums, over admissible ordered pairs, the unit phase
    exp(i*q*phi_pair) * exp(i*w*ln(r_pair)), times exp(i*(theta_a - theta_b))
    for the orientation variant. pair_weight, when given, scales each pair's
    term (default weight 1); it must depend only on pair geometry and indices
    or translation invariance is lost.
    """
    if grid.kind is not GridKind.LOG_POLAR_FREQ:
        raise ValueError("compute_log_spectrum needs a LOG_POLAR_FREQ grid")
    r, _, angular = _pair_terms(s, variant, pair_weight)
    a_mat = angular(grid.q_array())                       # (n_q, n_pairs)
    radial = np.exp(1j * np.outer(np.log(r), grid.radial_array()))
    return SpectralTemplate(grid, variant, a_mat @ radial, source)


def compute_radial_spectrum(
    s: MinutiaSet,
    variant: Variant,
    grid: GridSpec,
    pair_weight: PairWeight | None = None,
    source: str = "",
) -> SpectralTemplate:
    """Pair spectrum on a direct radial grid.

    Entry (q, R) sums exp(i*q*phi_pair) * exp(-(R - r_pair)^2 / (2*sigma^2)),
    times exp(i*(theta_a - theta_b)) for the orientation variant. The
    Gaussian turns each pair distance into a soft radial bump, so entries
    are complex but bounded by the admissible pair count.
    """
    if grid.kind is not GridKind.RADIAL_DIRECT:
        raise ValueError("compute_radial_spectrum needs a RADIAL_DIRECT grid")
    r, _, angular = _pair_terms(s, variant, pair_weight)
    a_mat = angular(grid.q_array())
    dev = (grid.radial_array()[None, :] - r[:, None]) / grid.sigma
    radial = np.exp(-0.5 * dev * dev)                     # (n_pairs, n_R)
    return SpectralTemplate(grid, variant, a_mat @ radial, source)


def compute_spectrum(
    s: MinutiaSet,
    family: Family,
    variant: Variant,
    grid: GridSpec,
    pair_weight: PairWeight | None = None,
    source: str = "",
) -> SpectralTemplate:
    """Family-dispatching front end for the two compute kernels."""
    if family is Family.LOG_FREQ:
        return compute_log_spectrum(s, variant, grid, pair_weight, source)
    if family is Family.RADIAL:
        return compute_radial_spectrum(s, variant, grid, pair_weight, source)
    raise ValueError(f"no pair-spectrum kernel for family {family!r}")


def transform_template(
    t: SpectralTemplate,
    phi: float,
    scale: float = 1.0,
) -> SpectralTemplate:
    """Template of the same minutiae rigidly rotated ccw by phi radians.

    Rotation multiplies row q by exp(i*q*phi). On log-frequency grids a
    uniform scaling by `scale` additionally multiplies column w by
    exp(i*w*ln(scale)); direct radial grids admit no scaling action, so any
    scale != 1 raises UnsupportedTransformError. phi = 0, scale = 1 returns
    an identical template.
    """
    phi = float(phi)
    scale = float(scale)
    if scale <= 0.0:
        raise ValueError(f"scale must be positive, got {scale}")
    if t.grid.kind is GridKind.RADIAL_DIRECT and scale != 1.0:
        raise UnsupportedTransformError(
            "direct radial templates do not support scaling; pass scale=1"
        )
    if phi == 0.0 and scale == 1.0:
        return SpectralTemplate(t.grid, t.variant, t.values, t.source)
    factor = np.exp(1j * t.grid.q_array() * phi)[:, None]
    if t.grid.kind is GridKind.LOG_POLAR_FREQ and scale != 1.0:
        factor = factor * np.exp(1j * t.grid.radial_array() * np.log(scale))[None, :]
    return SpectralTemplate(t.grid, t.variant, t.values * factor, t.source)
