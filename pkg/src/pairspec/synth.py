"""Seeded synthetic minutiae data.

generate_finger lays out a base constellation; perturb derives noisy capture
variants of it. Everything is driven by numpy's seeded Generator, so a given
(seed, parameters) pair always produces the same database, file for file.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import GenerationError
from .minutiae import TWO_PI, Minutia, MinutiaSet, write_minutiae_file

#: Minimum distance between generated base minutiae, px.
MIN_SPACING = 8.0
#: Quality range for generated and resampled minutiae (inclusive).
QUALITY_LOW, QUALITY_HIGH = 45, 100


@dataclass(frozen=True)
class NoiseModel:
    """Capture-to-capture perturbation strengths.

    Attributes:
        jitter_sigma: Per-coordinate Gaussian position noise, px.
        theta_sigma: Gaussian orientation noise, radians.
        drop_prob: Independent deletion probability per minutia.
        spur_count: Spurious minutiae added per capture.
        rot_range: Whole-set rotation drawn uniformly from [-r, r], radians.
        trans_range: Whole-set translation per axis from [-t, t], px.
    """

    jitter_sigma: float = 0.0
    theta_sigma: float = 0.0
    drop_prob: float = 0.0
    spur_count: int = 0
    rot_range: float = 0.0
    trans_range: float = 0.0

    def __post_init__(self) -> None:
        if self.jitter_sigma < 0 or self.theta_sigma < 0:
            raise ValueError("noise sigmas must be non-negative")
        if not 0.0 <= self.drop_prob <= 1.0:
            raise ValueError("drop_prob must lie in [0, 1]")
        if self.spur_count < 0 or self.spur_count != int(self.spur_count):
            raise ValueError("spur_count must be a non-negative integer")
        if self.rot_range < 0 or self.trans_range < 0:
            raise ValueError("rot_range and trans_range must be non-negative")


def generate_finger(seed, z: int, width: int, height: int) -> MinutiaSet:
    """Random base constellation of z minutiae on a width x height image.

    Points are drawn uniformly with rejection so no two lie closer than
    MIN_SPACING; orientations are uniform over [0, 2*pi) and qualities
    uniform integers in [45, 100]. Raises GenerationError when the rejection
    budget runs out (image too small for z points).
    """
    if z < 2:
        raise ValueError(f"need at least 2 minutiae, got {z}")
    if width <= 0 or height <= 0:
        raise ValueError("image dimensions must be positive")
    rng = np.random.default_rng(seed)
    xs: list[float] = []
    ys: list[float] = []
    budget = 1000 + 200 * z
    while len(xs) < z:
        if budget == 0:
            raise GenerationError(
                f"could not place {z} points at spacing {MIN_SPACING} "
                f"on a {width}x{height} image"
            )
        budget -= 1
        x = rng.uniform(0.0, width)
        y = rng.uniform(0.0, height)
        ok = True
        for px, py in zip(xs, ys):
            if (x - px) ** 2 + (y - py) ** 2 < MIN_SPACING**2:
                ok = False
                break
        if ok:
            xs.append(x)
            ys.append(y)
    thetas = rng.uniform(0.0, TWO_PI, size=z)
    qualities = rng.integers(QUALITY_LOW, QUALITY_HIGH + 1, size=z)
    minutiae = tuple(
        Minutia(xs[i], ys[i], thetas[i], int(qualities[i])) for i in range(z)
    )
    return MinutiaSet(minutiae, width, height)


def perturb(s: MinutiaSet, noise: NoiseModel, seed) -> MinutiaSet:
    """One noisy capture of a base constellation.

    Applies, in order: whole-set rotation about the image center, whole-set
    translation, per-point coordinate jitter, orientation noise, quality
    resampling, random deletion, spur insertion; finally clamps coordinates
    to the image rectangle. An all-zero noise model returns the input set
    unchanged: the rotation step is skipped arithmetically when the drawn
    angle is exactly 0 and qualities are resampled only when jitter_sigma is
    positive, so no float round trip can disturb the identity.
    """
    rng = np.random.default_rng(seed)
    z = len(s)
    w, h = float(s.image_width), float(s.image_height)

    x = np.array([m.x for m in s.minutiae], dtype=float)
    y = np.array([m.y for m in s.minutiae], dtype=float)
    theta = np.array([m.theta for m in s.minutiae], dtype=float)
    quality = np.array([m.quality for m in s.minutiae], dtype=int)

    angle = rng.uniform(-noise.rot_range, noise.rot_range)
    if angle != 0.0:
        cx, cy = w / 2.0, h / 2.0
        c, sn = math.cos(angle), math.sin(angle)
        rx, ry = x - cx, y - cy
        x = cx + c * rx - sn * ry
        y = cy + sn * rx + c * ry
        theta = theta + angle

    dx = rng.uniform(-noise.trans_range, noise.trans_range)
    dy = rng.uniform(-noise.trans_range, noise.trans_range)
    x = x + dx
    y = y + dy

    x = x + rng.normal(0.0, noise.jitter_sigma, size=z)
    y = y + rng.normal(0.0, noise.jitter_sigma, size=z)
    theta = theta + rng.normal(0.0, noise.theta_sigma, size=z)

    if noise.jitter_sigma > 0.0:
        quality = rng.integers(QUALITY_LOW, QUALITY_HIGH + 1, size=z)

    keep = rng.random(size=z) >= noise.drop_prob

    minutiae = [
        Minutia(
            float(np.clip(x[i], 0.0, w)),
            float(np.clip(y[i], 0.0, h)),
            float(theta[i]),
            int(quality[i]),
        )
        for i in range(z)
        if keep[i]
    ]
    for _ in range(noise.spur_count):
        minutiae.append(
            Minutia(
                rng.uniform(0.0, w),
                rng.uniform(0.0, h),
                rng.uniform(0.0, TWO_PI),
                int(rng.integers(QUALITY_LOW, QUALITY_HIGH + 1)),
            )
        )
    return MinutiaSet(tuple(minutiae), s.image_width, s.image_height)


Database = dict[str, list[tuple[str, MinutiaSet]]]


def make_database(
    fingers: int,
    images: int,
    z: int,
    width: int,
    height: int,
    noise: NoiseModel,
    seed: int,
) -> Database:
    """Synthesize a verification database.

    Returns {finger_key: [(image_key, MinutiaSet), ...]} with finger keys
    "<nnn>_1" (person nnn, finger 1) and image keys "1".."images". Each
    finger gets an independent base constellation derived from (seed, finger
    index); each capture perturbs it with (seed, finger index, image index),
    so any single file can be regenerated without the rest.
    """
    if fingers < 1 or images < 1:
        raise ValueError("fingers and images must be positive")
    db: Database = {}
    for f in range(1, fingers + 1):
        base = generate_finger([seed, f], z, width, height)
        captures = [
            (str(i), perturb(base, noise, [seed, f, i]))
            for i in range(1, images + 1)
        ]
        db[f"{f:03d}_1"] = captures
    return db


def write_database(dirpath, db: Database) -> None:
    """Write a database as <finger_key>_<image_key>.xyt files."""
    out = Path(dirpath)
    out.mkdir(parents=True, exist_ok=True)
    for finger_key, captures in db.items():
        for image_key, s in captures:
            write_minutiae_file(out / f"{finger_key}_{image_key}.xyt", s)
