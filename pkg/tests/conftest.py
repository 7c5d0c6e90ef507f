"""Shared fixtures: seeded random minutia sets with controllable margins."""

from __future__ import annotations

import math

import numpy as np
import pytest

from pairspec import Minutia, MinutiaSet

# Minimum squared pairwise distance in generated sets. Keeps every ordered
# pair admissible and away from the coincidence filter.
_MIN_D2 = 4.0


def random_minutia_set(
    rng: np.random.Generator,
    z: int,
    width: int = 326,
    height: int = 357,
    margin: float = 30.0,
    quality: int | None = None,
) -> MinutiaSet:
    """Draw z well-separated minutiae uniformly inside the margin box.

    The margin leaves room for the rigid motions the invariance tests apply,
    so translated/rotated copies stay inside the image bounds.
    """
    while True:
        xs = rng.uniform(margin, width - margin, z)
        ys = rng.uniform(margin, height - margin, z)
        d2 = (xs[:, None] - xs) ** 2 + (ys[:, None] - ys) ** 2
        np.fill_diagonal(d2, np.inf)
        if d2.min() > _MIN_D2:
            break
    thetas = rng.uniform(0.0, 2.0 * math.pi, z)
    if quality is None:
        qualities = rng.integers(45, 101, z)
    else:
        qualities = np.full(z, quality)
    minutiae = tuple(
        Minutia(float(x), float(y), float(t), int(q))
        for x, y, t, q in zip(xs, ys, thetas, qualities)
    )
    return MinutiaSet(minutiae, width, height)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def small_set() -> MinutiaSet:
    # 3-4-5 geometry plus a third point; handy for hand-checked oracles
    return MinutiaSet(
        (
            Minutia(0.0, 0.0, 0.0, 90),
            Minutia(3.0, 4.0, 1.0, 80),
            Minutia(10.0, 0.0, 2.0, 70),
        ),
        100,
        100,
    )
