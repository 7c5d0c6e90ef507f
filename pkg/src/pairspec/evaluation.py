"""Verification protocol: genuine/impostor comparisons, ROC, EER.

A database maps finger keys ("<person>_<finger>") to a list of captures
("<image>", MinutiaSet). Genuine comparisons pair every two captures of the
same finger; impostor comparisons pick, for every unordered pair of distinct
fingers (different persons or different fingers of one person), one capture
per side by a deterministic seeded draw.
"""

from __future__ import annotations

import hashlib
import math
from bisect import bisect_left
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

from .errors import ProtocolError
from .grids import Family, GridSpec, Variant, default_grid
from .matching import MatchResult, match_with_rotation
from .minutiae import MinutiaSet, filter_quality, parse_minutiae_file
from .spectral import SpectralTemplate, compute_spectrum

Database = dict[str, list[tuple[str, MinutiaSet]]]

DEFAULT_MIN_QUALITY = 45


class RocPoint(NamedTuple):
    threshold: float
    far: float   # fraction of impostor scores >= threshold
    frr: float   # fraction of genuine scores < threshold


@dataclass(frozen=True)
class ComparisonRecord:
    """One scored template comparison."""

    kind: str                 # "genuine" or "impostor"
    finger_a: str
    image_a: str
    finger_b: str
    image_b: str
    result: MatchResult


@dataclass(frozen=True)
class MatchConfig:
    """Everything needed to turn minutia sets into scored comparisons."""

    family: Family
    location_grid: GridSpec
    orientation_grid: GridSpec
    angles: tuple[float, ...] = (0.0,)
    min_quality: int = DEFAULT_MIN_QUALITY

    def __post_init__(self) -> None:
        object.__setattr__(self, "angles", tuple(float(a) for a in self.angles))
        if not self.angles:
            raise ValueError("angles must be non-empty")
        if self.location_grid.family is not self.family:
            raise ValueError("location grid family mismatch")
        if self.orientation_grid.family is not self.family:
            raise ValueError("orientation grid family mismatch")


def default_config(
    family: Family = Family.RADIAL,
    image_width: int | None = None,
    angles: Iterable[float] = (0.0,),
    min_quality: int = DEFAULT_MIN_QUALITY,
) -> MatchConfig:
    return MatchConfig(
        family=family,
        location_grid=default_grid(family, Variant.LOCATION, image_width),
        orientation_grid=default_grid(family, Variant.LOCATION_ORIENTATION, image_width),
        angles=tuple(angles),
        min_quality=min_quality,
    )


@dataclass(frozen=True)
class EvalReport:
    """Full outcome of one database evaluation."""

    genuine: tuple[ComparisonRecord, ...]
    impostor: tuple[ComparisonRecord, ...]
    roc: tuple[RocPoint, ...]
    eer: float
    phi_histogram: dict[float, int]
    skipped_fingers: tuple[str, ...]  # fingers with < 2 captures

    @property
    def genuine_scores(self) -> list[float]:
        return [rec.result.fused for rec in self.genuine]

    @property
    def impostor_scores(self) -> list[float]:
        return [rec.result.fused for rec in self.impostor]


# ---------------------------------------------------------------------------
# Database loading
# ---------------------------------------------------------------------------

def _natural_key(token: str):
    return (0, int(token)) if token.isdigit() else (1, token)


def _finger_sort_key(finger_key: str):
    return tuple(_natural_key(part) for part in finger_key.split("_"))


def load_database(dirpath, pattern: str = "*.xyt") -> Database:
    """Load every minutiae file in a directory into a database.

    File names must look like "<person>_<finger>_<image>.xyt"; captures are
    grouped by (person, finger) and both groups and captures are sorted
    numerically where the tokens are numeric. Misnamed files raise
    ProtocolError.
    """
    root = Path(dirpath)
    files = sorted(root.glob(pattern))
    if not files:
        raise ProtocolError(f"no {pattern} files found in {root}")
    grouped: Database = {}
    for f in files:
        parts = f.stem.split("_")
        if len(parts) != 3:
            raise ProtocolError(
                f"{f.name}: file name must be <person>_<finger>_<image>{f.suffix}"
            )
        person, finger, image = parts
        grouped.setdefault(f"{person}_{finger}", []).append((image, parse_minutiae_file(f)))
    out: Database = {}
    for key in sorted(grouped, key=_finger_sort_key):
        out[key] = sorted(grouped[key], key=lambda item: _natural_key(item[0]))
    return out


def restrict_persons(db: Database, persons: Sequence[str]) -> Database:
    """Keep only fingers belonging to the listed persons."""
    wanted = set(persons)
    out = {k: v for k, v in db.items() if k.split("_")[0] in wanted}
    if not out:
        raise ProtocolError("person filter removed every finger")
    return out


# ---------------------------------------------------------------------------
# Protocol
# ---------------------------------------------------------------------------

def _template_cache(
    db: Database, config: MatchConfig
) -> dict[tuple[str, str], tuple[SpectralTemplate, SpectralTemplate]]:
    cache = {}
    for finger, captures in db.items():
        for image, s in captures:
            filtered = filter_quality(s, config.min_quality)
            label = f"{finger}_{image}"
            cache[(finger, image)] = (
                compute_spectrum(
                    filtered, config.family, Variant.LOCATION,
                    config.location_grid, source=label,
                ),
                compute_spectrum(
                    filtered, config.family, Variant.LOCATION_ORIENTATION,
                    config.orientation_grid, source=label,
                ),
            )
    return cache


def genuine_comparisons(
    db: Database,
    config: MatchConfig,
    _cache=None,
) -> tuple[list[ComparisonRecord], list[str]]:
    """Score every pair of captures of each finger.

    The earlier capture of a pair acts as the enrolled side. Fingers with
    fewer than two captures cannot produce genuine pairs; they are skipped
    and reported in the second return value.
    """
    cache = _cache if _cache is not None else _template_cache(db, config)
    records: list[ComparisonRecord] = []
    skipped: list[str] = []
    for finger, captures in db.items():
        if len(captures) < 2:
            skipped.append(finger)
            continue
        for (img_a, _), (img_b, _) in combinations(captures, 2):
            result = match_with_rotation(
                cache[(finger, img_a)], cache[(finger, img_b)], config.angles
            )
            records.append(
                ComparisonRecord("genuine", finger, img_a, finger, img_b, result)
            )
    return records, skipped


def _impostor_draw(seed: int, finger_a: str, finger_b: str, n_a: int, n_b: int) -> tuple[int, int]:
    """Deterministic capture indices for one impostor finger pair."""
    digest = hashlib.sha256(f"{seed}|{finger_a}|{finger_b}".encode()).digest()
    ia = int.from_bytes(digest[:8], "big") % n_a
    ib = int.from_bytes(digest[8:16], "big") % n_b
    return ia, ib


def impostor_comparisons(
    db: Database,
    config: MatchConfig,
    seed: int = 0,
    _cache=None,
) -> list[ComparisonRecord]:
    """Score one capture pair for every unordered pair of distinct fingers.

    Different fingers of the same person count as impostors too. The capture
    drawn from each side is a deterministic function of (seed, finger pair),
    independent of iteration order.
    """
    cache = _cache if _cache is not None else _template_cache(db, config)
    records: list[ComparisonRecord] = []
    fingers = list(db.keys())
    for fa, fb in combinations(fingers, 2):
        caps_a, caps_b = db[fa], db[fb]
        ia, ib = _impostor_draw(seed, fa, fb, len(caps_a), len(caps_b))
        img_a, img_b = caps_a[ia][0], caps_b[ib][0]
        result = match_with_rotation(
            cache[(fa, img_a)], cache[(fb, img_b)], config.angles
        )
        records.append(ComparisonRecord("impostor", fa, img_a, fb, img_b, result))
    return records


# ---------------------------------------------------------------------------
# ROC / EER
# ---------------------------------------------------------------------------

def roc_and_eer(
    genuine_scores: Sequence[float],
    impostor_scores: Sequence[float],
) -> tuple[list[RocPoint], float]:
    """ROC curve over observed score thresholds, plus the equal error rate.

    Thresholds sweep the sorted union of all observed scores, closed by a
    sentinel at +inf (FAR 0, FRR 1). FAR at t is the fraction of impostor
    scores >= t; FRR the fraction of genuine scores < t. FAR - FRR then
    starts at 1, ends at -1, and never increases, so it crosses zero; the
    EER linearly interpolates FAR and FRR at that crossing (exactly the
    common value when the crossing lands on a sweep point).
    """
    if not genuine_scores or not impostor_scores:
        raise ProtocolError("ROC needs at least one genuine and one impostor score")
    gs = sorted(float(v) for v in genuine_scores)
    imps = sorted(float(v) for v in impostor_scores)
    n_g, n_i = len(gs), len(imps)
    roc: list[RocPoint] = []
    for t in sorted(set(gs) | set(imps)):
        far = (n_i - bisect_left(imps, t)) / n_i
        frr = bisect_left(gs, t) / n_g
        roc.append(RocPoint(t, far, frr))
    roc.append(RocPoint(math.inf, 0.0, 1.0))
    for prev, cur in zip(roc, roc[1:]):  # cheap sanity on every report
        if cur.far > prev.far or cur.frr < prev.frr:
            raise ProtocolError("ROC lost monotonicity; scores are corrupt")
    return roc, _interpolated_eer(roc)


def _interpolated_eer(roc: Sequence[RocPoint]) -> float:
    for (_, far0, frr0), (_, far1, frr1) in zip(roc, roc[1:]):
        d0 = far0 - frr0
        d1 = far1 - frr1
        if d0 >= 0.0 >= d1:
            if d0 == d1:  # flat zero-difference stretch
                return far0
            f = d0 / (d0 - d1)
            return far0 + f * (far1 - far0)
    raise ProtocolError("FAR/FRR difference never crossed zero")


def optimal_angle_histogram(source, config: MatchConfig | None = None) -> dict[float, int]:
    """Count how often each candidate angle won.

    source is either an iterable of ComparisonRecord, or a database whose
    genuine comparisons are first scored with the given config (which then
    must not be None).
    """
    if config is not None:
        records, _ = genuine_comparisons(source, config)
    else:
        records = source
    hist: dict[float, int] = {}
    for rec in records:
        phi = rec.result.phi_opt
        hist[phi] = hist.get(phi, 0) + 1
    return dict(sorted(hist.items()))


def run_evaluation(db: Database, config: MatchConfig, seed: int = 0) -> EvalReport:
    """Full protocol: all comparisons, ROC, EER, winning-angle histogram."""
    if not db:
        raise ProtocolError("empty database")
    cache = _template_cache(db, config)
    genuine, skipped = genuine_comparisons(db, config, _cache=cache)
    impostor = impostor_comparisons(db, config, seed=seed, _cache=cache)
    if not genuine:
        raise ProtocolError("no finger has two captures; no genuine pairs exist")
    if not impostor:
        raise ProtocolError("need at least two distinct fingers for impostor pairs")
    roc, eer = roc_and_eer(
        [r.result.fused for r in genuine], [r.result.fused for r in impostor]
    )
    return EvalReport(
        genuine=tuple(genuine),
        impostor=tuple(impostor),
        roc=tuple(roc),
        eer=eer,
        phi_histogram=optimal_angle_histogram(genuine),
        skipped_fingers=tuple(skipped),
    )


# ---------------------------------------------------------------------------
# Report files
# ---------------------------------------------------------------------------

def _fmt(x: float) -> str:
    return f"{x:.17g}"


def write_comparisons_csv(path, records: Iterable[ComparisonRecord]) -> None:
    # column names are part of the report file format
    lines = ["kind,finger_a,image_a,finger_b,image_b,score_x,score_xtheta,fused,phi_opt"]
    for r in records:
        m = r.result
        lines.append(
            f"{r.kind},{r.finger_a},{r.image_a},{r.finger_b},{r.image_b},"
            f"{_fmt(m.score_location)},{_fmt(m.score_orientation)},"
            f"{_fmt(m.fused)},{_fmt(m.phi_opt)}"
        )
    Path(path).write_text("\n".join(lines) + "\n")


def write_roc_csv(path, roc: Iterable[RocPoint]) -> None:
    lines = ["threshold,FAR,FRR"]
    for p in roc:
        lines.append(f"{_fmt(p.threshold)},{_fmt(p.far)},{_fmt(p.frr)}")
    Path(path).write_text("\n".join(lines) + "\n")


def write_histogram_csv(path, hist: dict[float, int]) -> None:
    lines = ["phi_opt,count"]
    for phi, count in sorted(hist.items()):
        lines.append(f"{_fmt(phi)},{count}")
    Path(path).write_text("\n".join(lines) + "\n")


def write_summary(path, report: EvalReport) -> str:
    """Write the one-line summary file; returns the summary line."""
    line = f"EER={_fmt(report.eer)}"
    Path(path).write_text(line + "\n")
    return line
