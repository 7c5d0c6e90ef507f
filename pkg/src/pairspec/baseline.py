"""Single-minutia magnitude spectrum, the benchmark representation.

Positions enter an absolute Fourier sum sampled on a log-polar frequency
grid; taking the magnitude restores translation invariance, and an image
rotation becomes a circular shift along the direction axis. Unlike the pair
spectra this costs one full grid sweep per minutia.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InsufficientMinutiaeError
from .grids import BaselineGrid, Variant
from .matching import complex_pearson
from .minutiae import MinutiaSet, as_arrays


@dataclass(frozen=True)
class MagnitudeTemplate:
    """A magnitude spectrum evaluated on a baseline grid.

    values[i, j] is the (real, non-negative) magnitude at
    (alpha_values[i], beta_values[j]).
    """

    grid: BaselineGrid
    variant: Variant
    values: np.ndarray
    source: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        arr = np.array(self.values, dtype=float)
        if arr.shape != self.grid.shape:
            raise ValueError(
                f"values shape {arr.shape} does not match grid shape {self.grid.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise ValueError("template values must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MagnitudeTemplate):
            return NotImplemented
        return (
            self.grid == other.grid
            and self.variant == other.variant
            and np.array_equal(self.values, other.values)
        )

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True)
class BaselineMatch:
    """Best-shift correlation between two magnitude spectra.

    score is a real Pearson correlation in [-1, 1]; shift is the circular
    column displacement (in grid steps) applied to the probe to reach it. A
    probe rotated counter-clockwise relative to the reference lines up at a
    positive shift of rotation / beta_step.
    """

    score: float
    shift: int

    def __post_init__(self) -> None:
        if not -1.0 <= self.score <= 1.0:
            raise ValueError(f"score must lie in [-1, 1], got {self.score}")


def compute_magnitude_spectrum(
    s: MinutiaSet,
    grid: BaselineGrid,
    variant: Variant = Variant.LOCATION,
) -> np.ndarray:
    """Magnitude spectrum of the minutia positions on a log-polar grid.

    At wave vector k(alpha, beta) = exp(alpha) * (cos beta, sin beta) the
    value is exp(-sigma^2 |k|^2 / 2) * |sum_j exp(-i k . x_j)|, the sum
    running over minutiae (each weighted by exp(i theta_j) for the
    orientation variant). Returns the (n_alpha, n_beta) float array.
    """
    if len(s) == 0:
        raise InsufficientMinutiaeError("magnitude spectrum needs at least one minutia")
    x, y, theta, _ = as_arrays(s)
    freq = np.exp(grid.alpha_array())
    betas = grid.beta_array()
    kx = freq[:, None] * np.cos(betas)[None, :]
    ky = freq[:, None] * np.sin(betas)[None, :]
    total = np.zeros(kx.shape, dtype=np.complex128)
    orientation = variant is Variant.LOCATION_ORIENTATION
    # one grid sweep per minutia keeps the peak memory at a single grid
    for j in range(len(s)):
        term = np.exp(-1j * (kx * x[j] + ky * y[j]))
        if orientation:
            term *= np.exp(1j * theta[j])
        total += term
    envelope = np.exp(-0.5 * grid.sigma**2 * (kx * kx + ky * ky))
    return envelope * np.abs(total)


def magnitude_template(
    s: MinutiaSet,
    grid: BaselineGrid,
    variant: Variant = Variant.LOCATION,
    source: str = "",
) -> MagnitudeTemplate:
    return MagnitudeTemplate(grid, variant, compute_magnitude_spectrum(s, grid, variant), source)


def baseline_match(
    probe: np.ndarray,
    reference: np.ndarray,
    shifts: range | list[int] | tuple[int, ...] = range(0, 1),
) -> BaselineMatch:
    """Best Pearson correlation over circular column shifts of the probe.

    score(shift) correlates the probe rolled back by `shift` columns against
    the reference, so a probe that equals the reference rolled forward by s
    columns scores 1.0 at shift s. Ties prefer the smallest |shift|, then the
    negative one. Constant inputs raise DegenerateScoreError.
    """
    p = np.asarray(probe, dtype=float)
    ref = np.asarray(reference, dtype=float)
    if p.shape != ref.shape or p.ndim != 2:
        raise ValueError(f"grids must share a 2-d shape, got {p.shape} and {ref.shape}")
    shift_list = [int(v) for v in shifts]
    if not shift_list:
        raise ValueError("shifts must be non-empty")
    flat_ref = ref.ravel()
    best: tuple[float, int] | None = None
    best_key = None
    for shift in shift_list:
        rolled = np.roll(p, -shift, axis=1)
        rho = complex_pearson(rolled.ravel(), flat_ref).real
        rho = min(max(rho, -1.0), 1.0)
        key = (-rho, abs(shift), shift)
        if best_key is None or key < best_key:
            best_key = key
            best = (rho, shift)
    assert best is not None
    return BaselineMatch(score=best[0], shift=best[1])
