"""Template comparison: complex correlation, score fusion, rotation search."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateScoreError, IncompatibleTemplateError
from .grids import Variant
from .spectral import SpectralTemplate, transform_template

#: Candidate probe-rotation grids, radians. "none" disables the search; the
#: two symmetric presets cover the small residual rotations typical after
#: capture alignment, in 1.5 degree steps.
ROTATION_PRESETS: dict[str, tuple[float, ...]] = {
    "none": (0.0,),
    "pm3": tuple(math.radians(d) for d in (-3.0, -1.5, 0.0, 1.5, 3.0)),
    "pm45": tuple(math.radians(d) for d in (-4.5, -3.0, -1.5, 0.0, 1.5, 3.0, 4.5)),
}


def rotation_angles(preset: str) -> tuple[float, ...]:
    """Angle list for a named rotation-search preset."""
    try:
        return ROTATION_PRESETS[preset]
    except KeyError:
        names = ", ".join(sorted(ROTATION_PRESETS))
        raise ValueError(f"unknown rotation preset {preset!r}; choose from: {names}")


@dataclass(frozen=True)
class MatchResult:
    """Outcome of one template comparison.

    score_location / score_orientation are per-variant similarity scores in
    [0, 1]; fused is their sum; phi_opt is the probe rotation (radians) that
    achieved it, 0.0 when no search ran.
    """

    score_location: float
    score_orientation: float
    fused: float
    phi_opt: float

    def __post_init__(self) -> None:
        for name in ("score_location", "score_orientation"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        expected = self.score_location + self.score_orientation
        if not math.isclose(self.fused, expected, rel_tol=1e-9, abs_tol=1e-12):
            raise ValueError(
                f"fused score {self.fused} is not the sum of the variant scores"
            )


def complex_pearson(u, v) -> complex:
    """Pearson correlation of two equal-length complex vectors.

    Both inputs are centered on their means and normalized by their standard
    deviations; the correlation uses the hermitian inner product (first
    argument conjugated), so the result is complex with |rho| <= 1 up to
    rounding. Real input gives the ordinary Pearson coefficient. Vectors
    shorter than 2 entries or with zero variance raise.
    """
    uu = np.asarray(u, dtype=np.complex128).ravel()
    vv = np.asarray(v, dtype=np.complex128).ravel()
    if uu.size != vv.size:
        raise ValueError(f"length mismatch: {uu.size} vs {vv.size}")
    n = uu.size
    if n < 2:
        raise ValueError("correlation needs at least 2 entries")
    du = uu - uu.mean()
    dv = vv - vv.mean()
    su = math.sqrt(np.mean(du.real**2 + du.imag**2))
    sv = math.sqrt(np.mean(dv.real**2 + dv.imag**2))
    if su == 0.0 or sv == 0.0:
        raise DegenerateScoreError("constant vector has no defined correlation")
    return complex(np.vdot(du, dv) / (n * su * sv))


def score(a: SpectralTemplate, b: SpectralTemplate) -> float:
    """Similarity of two like templates: |complex Pearson| of the flattened
    grids, in [0, 1]. Grid or variant mismatch raises."""
    if a.grid != b.grid:
        raise IncompatibleTemplateError("templates evaluated on different grids")
    if a.variant != b.variant:
        raise IncompatibleTemplateError(
            f"variant mismatch: {a.variant.value} vs {b.variant.value}"
        )
    rho = complex_pearson(a.flattened(), b.flattened())
    return min(abs(rho), 1.0)


def _check_variant_pair(
    location: SpectralTemplate, orientation: SpectralTemplate, label: str
) -> None:
    if location.variant is not Variant.LOCATION:
        raise IncompatibleTemplateError(f"{label}: first template must be the location variant")
    if orientation.variant is not Variant.LOCATION_ORIENTATION:
        raise IncompatibleTemplateError(
            f"{label}: second template must be the location-orientation variant"
        )
    if location.grid.kind != orientation.grid.kind:
        raise IncompatibleTemplateError(f"{label}: variant templates mix grid kinds")


def fused_score(
    location_a: SpectralTemplate,
    location_b: SpectralTemplate,
    orientation_a: SpectralTemplate,
    orientation_b: SpectralTemplate,
) -> float:
    """Sum of the two per-variant scores, in [0, 2]."""
    _check_variant_pair(location_a, orientation_a, "side a")
    _check_variant_pair(location_b, orientation_b, "side b")
    return score(location_a, location_b) + score(orientation_a, orientation_b)


TemplatePair = tuple[SpectralTemplate, SpectralTemplate]


def match_with_rotation(
    enrolled: TemplatePair,
    probe: TemplatePair,
    angles=(0.0,),
) -> MatchResult:
    """Maximize the fused score over candidate probe rotations.

    enrolled and probe are (location, location_orientation) template pairs.
    Each candidate angle phase-rotates both probe templates before scoring;
    the best fused score wins. Ties prefer the smallest |angle| and then the
    negative one, so a single-angle list [0.0] reproduces fused_score
    exactly. The angle list must be non-empty.
    """
    angle_list = [float(a) for a in angles]
    if not angle_list:
        raise ValueError("angles must be non-empty")
    enrolled_loc, enrolled_ori = enrolled
    probe_loc, probe_ori = probe
    _check_variant_pair(enrolled_loc, enrolled_ori, "enrolled")
    _check_variant_pair(probe_loc, probe_ori, "probe")
    best: MatchResult | None = None
    best_key = None
    for phi in angle_list:
        s_loc = score(enrolled_loc, transform_template(probe_loc, phi))
        s_ori = score(enrolled_ori, transform_template(probe_ori, phi))
        fused = s_loc + s_ori
        key = (-fused, abs(phi), phi)
        if best_key is None or key < best_key:
            best_key = key
            best = MatchResult(s_loc, s_ori, fused, phi)
    assert best is not None
    return best
