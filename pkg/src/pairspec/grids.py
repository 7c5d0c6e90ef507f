"""Evaluation grids: where the spectral functions are sampled.

Two pair-spectrum grid kinds exist. LOG_POLAR_FREQ samples an angular
harmonic index q against a log-radial frequency w (scaling acts as a phase
there); RADIAL_DIRECT samples q against a direct radial distance R smoothed
by a Gaussian of width sigma. The single-minutia baseline uses its own
log-polar frequency grid over (alpha, beta).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np


class GridKind(Enum):
    LOG_POLAR_FREQ = "log_polar_freq"
    RADIAL_DIRECT = "radial_direct"


class Variant(Enum):
    """Which minutia attributes feed the spectrum."""

    LOCATION = "location"
    LOCATION_ORIENTATION = "location_orientation"


class Family(Enum):
    """Template family tags used in serialized files."""

    LOG_FREQ = "L"    # pair spectrum on a log-frequency grid
    RADIAL = "M"      # pair spectrum on a direct radial grid
    MAGNITUDE = "G"   # single-minutia magnitude spectrum (baseline)


_KIND_TO_FAMILY = {
    GridKind.LOG_POLAR_FREQ: Family.LOG_FREQ,
    GridKind.RADIAL_DIRECT: Family.RADIAL,
}
_FAMILY_TO_KIND = {v: k for k, v in _KIND_TO_FAMILY.items()}


@dataclass(frozen=True)
class GridSpec:
    """A rectangular evaluation grid for a pair spectrum.

    Attributes:
        kind: Meaning of the radial axis (log frequency vs direct distance).
        q_values: Angular harmonic indices; distinct nonzero integers.
        radial_values: Strictly increasing radial axis samples. Frequencies w
            for LOG_POLAR_FREQ, distances R in pixels for RADIAL_DIRECT.
        sigma: Gaussian width in pixels; required (positive) for
            RADIAL_DIRECT, must be None for LOG_POLAR_FREQ.
    """

    kind: GridKind
    q_values: tuple[int, ...]
    radial_values: tuple[float, ...]
    sigma: float | None = None

    def __post_init__(self) -> None:
        qs = tuple(int(q) for q in self.q_values)
        rs = tuple(float(v) for v in self.radial_values)
        object.__setattr__(self, "q_values", qs)
        object.__setattr__(self, "radial_values", rs)
        if not qs or not rs:
            raise ValueError("grid axes must be non-empty")
        if len(set(qs)) != len(qs):
            raise ValueError("q_values must be distinct")
        if any(q == 0 for q in qs):
            raise ValueError("q = 0 is not a valid harmonic index")
        if any(b <= a for a, b in zip(rs, rs[1:])):
            raise ValueError("radial_values must be strictly increasing")
        if self.kind is GridKind.RADIAL_DIRECT:
            if self.sigma is None or not self.sigma > 0:
                raise ValueError("RADIAL_DIRECT grids need a positive sigma")
            if rs[0] <= 0:
                raise ValueError("radial distances must be positive")
        elif self.sigma is not None:
            raise ValueError("sigma applies only to RADIAL_DIRECT grids")

    @property
    def family(self) -> Family:
        return _KIND_TO_FAMILY[self.kind]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.q_values), len(self.radial_values)

    @property
    def size(self) -> int:
        nq, nr = self.shape
        return nq * nr

    def q_array(self) -> np.ndarray:
        return np.array(self.q_values, dtype=float)

    def radial_array(self) -> np.ndarray:
        return np.array(self.radial_values, dtype=float)

    def with_negative_q(self) -> "GridSpec":
        """Extend the q axis with the negated indices (sign-symmetric grid)."""
        negs = tuple(-q for q in self.q_values if -q not in self.q_values)
        qs = tuple(sorted(negs + self.q_values))
        return GridSpec(self.kind, qs, self.radial_values, self.sigma)


@dataclass(frozen=True)
class BaselineGrid:
    """Log-polar frequency grid for the single-minutia magnitude spectrum.

    alpha indexes the log of the radial frequency and beta the direction, so
    a wave vector is k = exp(alpha) * (cos beta, sin beta). beta values must
    be equally spaced over [0, 2*pi) so an image rotation is a circular
    shift of beta columns.
    """

    alpha_values: tuple[float, ...]
    beta_values: tuple[float, ...]
    sigma: float

    def __post_init__(self) -> None:
        alphas = tuple(float(a) for a in self.alpha_values)
        betas = tuple(float(b) for b in self.beta_values)
        object.__setattr__(self, "alpha_values", alphas)
        object.__setattr__(self, "beta_values", betas)
        if not alphas or not betas:
            raise ValueError("grid axes must be non-empty")
        if any(b <= a for a, b in zip(alphas, alphas[1:])):
            raise ValueError("alpha_values must be strictly increasing")
        if not self.sigma >= 0:
            raise ValueError("sigma must be non-negative")
        step = 2.0 * math.pi / len(betas)
        expected = [i * step for i in range(len(betas))]
        if not np.allclose(betas, expected, rtol=0.0, atol=1e-9):
            raise ValueError("beta_values must be i * 2*pi/n for i = 0..n-1")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.alpha_values), len(self.beta_values)

    @property
    def size(self) -> int:
        return len(self.alpha_values) * len(self.beta_values)

    @property
    def beta_step(self) -> float:
        return 2.0 * math.pi / len(self.beta_values)

    def alpha_array(self) -> np.ndarray:
        return np.array(self.alpha_values, dtype=float)

    def beta_array(self) -> np.ndarray:
        return np.array(self.beta_values, dtype=float)


# ---------------------------------------------------------------------------
# Defaults
# ---------------------------------------------------------------------------

LOG_FREQ_Q_MAX = 24
LOG_FREQ_W_RANGE = (0.2, 37.7)
LOG_FREQ_W_COUNT = 32

RADIAL_Q_MAX = 16
RADIAL_SIGMA = 2.3
# Radial spans by capture width: narrower sensors cap usable pair distances.
RADIAL_RANGE_NARROW = (16.0, 130.0)
RADIAL_COUNT_NARROW = 20
RADIAL_RANGE_WIDE = (16.0, 160.0)
RADIAL_COUNT_WIDE = 25
WIDE_IMAGE_WIDTH = 326

BASELINE_ALPHA_COUNT = 128
BASELINE_BETA_COUNT = 256
BASELINE_ALPHA_RANGE = (math.log(0.02), math.log(1.2))
BASELINE_SIGMA = 2.3


def _default_q(q_max: int, variant: Variant, signed: bool) -> tuple[int, ...]:
    # Location-only spectra vanish at odd q, so those rows carry no signal.
    step = 2 if variant is Variant.LOCATION else 1
    pos = tuple(range(step, q_max + 1, step))
    if signed:
        return tuple(-q for q in reversed(pos)) + pos
    return pos


def log_freq_grid(
    variant: Variant,
    q_max: int = LOG_FREQ_Q_MAX,
    w_range: tuple[float, float] = LOG_FREQ_W_RANGE,
    w_count: int = LOG_FREQ_W_COUNT,
) -> GridSpec:
    """Log-frequency grid: harmonics of both signs, w linearly spaced.

    Both q signs are stored because w is sampled only at positive values, so
    the (-q, w) point is not the conjugate of any stored point.
    """
    ws = np.linspace(w_range[0], w_range[1], w_count)
    return GridSpec(GridKind.LOG_POLAR_FREQ, _default_q(q_max, variant, signed=True), tuple(ws))


def radial_grid(
    variant: Variant,
    r_range: tuple[float, float] = RADIAL_RANGE_NARROW,
    r_count: int = RADIAL_COUNT_NARROW,
    q_max: int = RADIAL_Q_MAX,
    sigma: float = RADIAL_SIGMA,
) -> GridSpec:
    """Direct radial grid: positive harmonics, R linearly spaced.

    Negative-q rows are never stored: at fixed R they are plain conjugates
    of the positive rows and add no information.
    """
    rs = np.linspace(r_range[0], r_range[1], r_count)
    return GridSpec(GridKind.RADIAL_DIRECT, _default_q(q_max, variant, signed=False), tuple(rs), sigma)


def default_grid(
    family: Family,
    variant: Variant,
    image_width: int | None = None,
) -> GridSpec:
    """Standard grid for a template family and variant.

    For the radial family the image width picks the span: captures at least
    WIDE_IMAGE_WIDTH pixels wide get the 25-point [16, 160] grid, narrower
    (or unknown) ones the 20-point [16, 130] grid. The log-frequency grid
    does not depend on image size.
    """
    if family is Family.LOG_FREQ:
        return log_freq_grid(variant)
    if family is Family.RADIAL:
        if image_width is not None and image_width >= WIDE_IMAGE_WIDTH:
            return radial_grid(variant, RADIAL_RANGE_WIDE, RADIAL_COUNT_WIDE)
        return radial_grid(variant, RADIAL_RANGE_NARROW, RADIAL_COUNT_NARROW)
    raise ValueError(f"no pair-spectrum grid for family {family!r}")


def default_baseline_grid(
    alpha_count: int = BASELINE_ALPHA_COUNT,
    beta_count: int = BASELINE_BETA_COUNT,
    alpha_range: tuple[float, float] = BASELINE_ALPHA_RANGE,
    sigma: float = BASELINE_SIGMA,
) -> BaselineGrid:
    alphas = np.linspace(alpha_range[0], alpha_range[1], alpha_count)
    betas = [i * 2.0 * math.pi / beta_count for i in range(beta_count)]
    return BaselineGrid(tuple(alphas), tuple(betas), sigma)


def family_to_kind(family: Family) -> GridKind:
    kind = _FAMILY_TO_KIND.get(family)
    if kind is None:
        raise ValueError(f"family {family!r} has no pair-spectrum grid kind")
    return kind
