"""Synthetic constellation generation and the capture noise model."""

from __future__ import annotations

import math

import numpy as np
import pytest

from pairspec import (
    GenerationError,
    NoiseModel,
    generate_finger,
    make_database,
    perturb,
    write_database,
)
from pairspec.evaluation import load_database
from pairspec.profiles import DEFAULT_NOISE

ZERO_NOISE = NoiseModel(
    jitter_sigma=0.0,
    theta_sigma=0.0,
    drop_prob=0.0,
    spur_count=0,
    rot_range=0.0,
    trans_range=0.0,
)


# --- base constellation generation ---


def test_generate_is_deterministic():
    a = generate_finger(7, 20, 326, 357)
    b = generate_finger(7, 20, 326, 357)
    assert a == b


def test_generate_distinct_seeds_differ():
    assert generate_finger(1, 20, 326, 357) != generate_finger(2, 20, 326, 357)


def test_generate_respects_bounds_and_count():
    s = generate_finger(3, 40, 326, 357)
    assert len(s) == 40
    assert s.image_width == 326 and s.image_height == 357
    for m in s:
        assert 0.0 <= m.x <= 326 and 0.0 <= m.y <= 357
        assert 45 <= m.quality <= 100


def test_generate_enforces_minimum_spacing():
    s = generate_finger(11, 35, 326, 357)
    xs = np.array([m.x for m in s])
    ys = np.array([m.y for m in s])
    d2 = (xs[:, None] - xs) ** 2 + (ys[:, None] - ys) ** 2
    np.fill_diagonal(d2, np.inf)
    assert d2.min() >= 8.0**2


def test_generate_rejects_tiny_z():
    with pytest.raises(ValueError):
        generate_finger(0, 1, 326, 357)


def test_generate_impossible_density_raises():
    # 500 points at 8 px spacing cannot fit a 40x40 frame
    with pytest.raises(GenerationError):
        generate_finger(0, 500, 40, 40)


# --- perturbation ---


def test_zero_noise_is_identity():
    s = generate_finger(5, 30, 326, 357)
    assert perturb(s, ZERO_NOISE, 99) == s


def test_perturb_is_deterministic():
    s = generate_finger(5, 30, 326, 357)
    a = perturb(s, DEFAULT_NOISE, [5, 1])
    b = perturb(s, DEFAULT_NOISE, [5, 1])
    assert a == b
    assert a != perturb(s, DEFAULT_NOISE, [5, 2])


def test_perturb_stays_in_bounds():
    s = generate_finger(5, 30, 326, 357)
    for seed in range(20):
        p = perturb(s, DEFAULT_NOISE, seed)
        for m in p:
            assert 0.0 <= m.x <= 326 and 0.0 <= m.y <= 357


def test_deletion_only_reduces_count():
    s = generate_finger(5, 40, 326, 357)
    noise = NoiseModel(0.0, 0.0, 0.5, 0, 0.0, 0.0)
    sizes = {len(perturb(s, noise, k)) for k in range(10)}
    assert all(n <= 40 for n in sizes)
    assert any(n < 40 for n in sizes)
    # surviving minutiae are unmoved
    p = perturb(s, noise, 0)
    original = {(m.x, m.y) for m in s}
    assert all((m.x, m.y) in original for m in p)


def test_spurs_only_increase_count():
    s = generate_finger(5, 20, 326, 357)
    noise = NoiseModel(0.0, 0.0, 0.0, 4, 0.0, 0.0)
    p = perturb(s, noise, 0)
    assert len(p) == 24
    assert tuple(p)[:20] == tuple(s)


def test_pure_rotation_preserves_pair_distances():
    s = generate_finger(8, 25, 326, 357)
    noise = NoiseModel(0.0, 0.0, 0.0, 0, math.radians(6.0), 0.0)
    # try seeds until one draws an in-bounds rotation
    for seed in range(50):
        p = perturb(s, noise, seed)
        if len(p) == len(s) and p != s:
            i, j = 0, len(s) - 1
            d0 = math.hypot(s[i].x - s[j].x, s[i].y - s[j].y)
            d1 = math.hypot(p[i].x - p[j].x, p[i].y - p[j].y)
            assert d1 == pytest.approx(d0, abs=1e-9)
            return
    pytest.fail("no usable rotation draw found")


def test_noise_model_validation():
    with pytest.raises(ValueError):
        NoiseModel(-1.0, 0.0, 0.0, 0, 0.0, 0.0)
    with pytest.raises(ValueError):
        NoiseModel(0.0, 0.0, 1.5, 0, 0.0, 0.0)
    with pytest.raises(ValueError):
        NoiseModel(0.0, 0.0, 0.0, -1, 0.0, 0.0)


# --- database assembly ---


def test_make_database_shape():
    db = make_database(4, 3, 20, 326, 357, DEFAULT_NOISE, 42)
    assert sorted(db) == ["001_1", "002_1", "003_1", "004_1"]
    for captures in db.values():
        assert [k for k, _ in captures] == ["1", "2", "3"]
        for _, s in captures:
            assert len(s) >= 2


def test_make_database_deterministic():
    a = make_database(3, 2, 15, 326, 357, DEFAULT_NOISE, 7)
    b = make_database(3, 2, 15, 326, 357, DEFAULT_NOISE, 7)
    assert a == b


def test_write_then_load_database(tmp_path):
    db = make_database(3, 2, 15, 326, 357, DEFAULT_NOISE, 7)
    out = tmp_path / "db"
    write_database(out, db)
    files = sorted(p.name for p in out.glob("*.xyt"))
    assert files[0] == "001_1_1.xyt"
    assert len(files) == 6
    back = load_database(out)
    assert sorted(back) == sorted(db)
    for finger, captures in db.items():
        loaded = dict(back[finger])
        for image_key, s in captures:
            got = loaded[image_key]
            assert len(got) == len(s)
            for m0, m1 in zip(s, got):
                assert m1.x == m0.x and m1.y == m0.y
                assert m1.theta == pytest.approx(m0.theta, abs=1e-12)
                assert m1.quality == m0.quality
