"""Named parameter bundles for the supported capture styles.

A profile pins image geometry, the radial grid span that suits it, and the
rotation-search preset to use when searching is enabled; the synthetic
profile also carries database-generation defaults.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .grids import Family, GridSpec, Variant, default_grid
from .synth import NoiseModel

DEFAULT_NOISE = NoiseModel(
    jitter_sigma=2.0,
    theta_sigma=0.05,
    drop_prob=0.2,
    spur_count=3,
    rot_range=math.radians(6.0),
    trans_range=10.0,
)

DEFAULT_SEED = 1234


@dataclass(frozen=True)
class Profile:
    """Capture-style defaults: geometry, grids, search, synthesis."""

    name: str
    image_width: int
    image_height: int
    rotation_preset: str
    fingers: int = 50
    images: int = 6
    z: int = 35
    noise: NoiseModel = field(default_factory=lambda: DEFAULT_NOISE)
    seed: int = DEFAULT_SEED

    def grid(self, family: Family, variant: Variant) -> GridSpec:
        return default_grid(family, variant, self.image_width)


PROFILES: dict[str, Profile] = {
    "mcyt": Profile("mcyt", image_width=256, image_height=400, rotation_preset="pm3"),
    "verifinger": Profile(
        "verifinger", image_width=326, image_height=357, rotation_preset="pm45"
    ),
    "synthetic": Profile(
        "synthetic", image_width=326, image_height=357, rotation_preset="none"
    ),
}


def get_profile(name: str) -> Profile:
    try:
        return PROFILES[name]
    except KeyError:
        names = ", ".join(sorted(PROFILES))
        raise ValueError(f"unknown profile {name!r}; choose from: {names}")
