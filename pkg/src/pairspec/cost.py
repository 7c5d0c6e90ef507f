"""Analytic verification-cost model plus a wall-clock micro-benchmark.

The model counts abstract work units for verifying one probe against one
enrolled template: summation terms (one per grid point per summand), grid
re-rotations beyond the first candidate angle, and per-angle scoring passes.
It exposes why pair summation on a small direct radial grid undercuts a
single-minutia sweep of a dense log-polar grid even though pairs are
quadratic in the minutia count.
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass
from typing import Callable

from .baseline import compute_magnitude_spectrum
from .grids import (
    BaselineGrid,
    Family,
    GridSpec,
    Variant,
    default_baseline_grid,
    default_grid,
)
from .matching import complex_pearson, score
from .spectral import compute_spectrum, transform_template
from .synth import generate_finger


@dataclass(frozen=True)
class CostModel:
    """Unit-cost parameters for one verification.

    Attributes:
        n_grid: Grid points in the template.
        z: Minutiae per capture.
        n_phi: Candidate rotation angles scored (1 = no search).
        t_sum: Cost of one summation term at one grid point.
        t_rot: Cost of re-rotating one grid point (cheaper than t_sum).
        c_score: Scoring cost per grid point per angle.
    """

    n_grid: int
    z: int
    n_phi: int = 1
    t_sum: float = 1.0
    t_rot: float = 0.5
    c_score: float = 0.1

    def __post_init__(self) -> None:
        if self.n_grid < 1 or self.z < 1 or self.n_phi < 1:
            raise ValueError("n_grid, z, and n_phi must be positive")
        if self.t_sum <= 0 or self.t_rot <= 0 or self.c_score <= 0:
            raise ValueError("unit costs must be positive")
        if not self.t_rot < self.t_sum:
            raise ValueError("re-rotation must be cheaper than summation")


def summation_terms(model: CostModel, pair_based: bool) -> int:
    """Summands per grid point: unordered pairs, or one per minutia."""
    if pair_based:
        if model.z < 2:
            raise ValueError("pair summation needs z >= 2")
        return model.z * (model.z - 1) // 2
    return model.z


def template_terms(model: CostModel, pair_based: bool) -> int:
    """Total summation terms for one template (all grid points)."""
    return model.n_grid * summation_terms(model, pair_based)


def per_minutia_terms(model: CostModel, pair_based: bool) -> float:
    """First-term count amortized over minutiae.

    Pair summation costs n_grid * (z - 1) / 2 terms per minutia; the
    single-minutia sweep costs one full grid, n_grid. This is the comparison
    that favors pair templates despite their quadratic pair count: the pair
    grid is two orders of magnitude smaller.
    """
    return template_terms(model, pair_based) / model.z


def verification_cost(model: CostModel, pair_based: bool) -> float:
    """Modelled cost of one verification.

    Builds the probe template once (summation over the grid), re-rotates it
    for every additional candidate angle, and scores every angle.
    """
    build = template_terms(model, pair_based) * model.t_sum
    rerotate = (model.n_phi - 1) * model.n_grid * model.t_rot
    scoring = model.n_phi * model.c_score * model.n_grid
    return build + rerotate + scoring


# ---------------------------------------------------------------------------
# Micro-benchmark
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BenchEntry:
    name: str
    median_seconds: float
    repeats: int


@dataclass(frozen=True)
class BenchReport:
    z: int
    pair_grid: GridSpec
    baseline_grid: BaselineGrid
    n_phi: int
    pair_terms_per_minutia: float
    baseline_terms_per_minutia: float
    pair_terms_total: int
    baseline_terms_total: int
    pair_cost: float
    baseline_cost: float
    entries: tuple[BenchEntry, ...]

    def format(self) -> str:
        lines = [
            f"minutiae per capture:       {self.z}",
            f"pair grid points:           {self.pair_grid.size}",
            f"baseline grid points:       {self.baseline_grid.size}",
            f"candidate angles:           {self.n_phi}",
            f"terms per minutia (pair):   {self.pair_terms_per_minutia:g}",
            f"terms per minutia (base):   {self.baseline_terms_per_minutia:g}",
            f"terms total (pair):         {self.pair_terms_total}",
            f"terms total (base):         {self.baseline_terms_total}",
            f"modelled cost (pair):       {self.pair_cost:.17g}",
            f"modelled cost (base):       {self.baseline_cost:.17g}",
        ]
        for e in self.entries:
            lines.append(f"{e.name:<28}{e.median_seconds * 1e3:.3f} ms (median of {e.repeats})")
        return "\n".join(lines)


def _time(fn: Callable[[], object], repeats: int) -> float:
    fn()  # warm up
    samples = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def run_bench(
    z: int = 35,
    image_width: int = 326,
    image_height: int = 357,
    n_phi: int = 1,
    repeats: int = 5,
    seed: int = 0,
) -> BenchReport:
    """Time the core operations on one synthetic capture and report the
    analytic cost model next to the measurements.

    The analytic counts use per-grid-point summation terms: z(z-1)/2 for the
    pair template, z for the single-minutia baseline sweep.
    """
    if z < 2:
        raise ValueError("bench needs z >= 2")
    if repeats < 1:
        raise ValueError("repeats must be positive")
    s = generate_finger([seed, 0], z, image_width, image_height)
    variant = Variant.LOCATION_ORIENTATION
    pair_grid = default_grid(Family.RADIAL, variant, image_width)
    base_grid = default_baseline_grid()

    pair_model = CostModel(n_grid=pair_grid.size, z=z, n_phi=max(n_phi, 1))
    base_model = CostModel(
        n_grid=base_grid.size, z=z, n_phi=max(n_phi, 1)
    )

    t_pair = compute_spectrum(s, Family.RADIAL, variant, pair_grid)
    g_base = compute_magnitude_spectrum(s, base_grid, variant)

    entries = [
        BenchEntry(
            "pair template",
            _time(lambda: compute_spectrum(s, Family.RADIAL, variant, pair_grid), repeats),
            repeats,
        ),
        BenchEntry(
            "baseline template",
            _time(lambda: compute_magnitude_spectrum(s, base_grid, variant), repeats),
            repeats,
        ),
        BenchEntry(
            "pair rotation",
            _time(lambda: transform_template(t_pair, 0.1), repeats),
            repeats,
        ),
        BenchEntry(
            "pair score",
            _time(lambda: score(t_pair, t_pair), repeats),
            repeats,
        ),
        BenchEntry(
            "baseline score",
            _time(lambda: complex_pearson(g_base.ravel(), g_base.ravel()), repeats),
            repeats,
        ),
    ]
    return BenchReport(
        z=z,
        pair_grid=pair_grid,
        baseline_grid=base_grid,
        n_phi=max(n_phi, 1),
        pair_terms_per_minutia=per_minutia_terms(pair_model, pair_based=True),
        baseline_terms_per_minutia=per_minutia_terms(base_model, pair_based=False),
        pair_terms_total=template_terms(pair_model, pair_based=True),
        baseline_terms_total=template_terms(base_model, pair_based=False),
        pair_cost=verification_cost(pair_model, pair_based=True),
        baseline_cost=verification_cost(base_model, pair_based=False),
        entries=tuple(entries),
    )
