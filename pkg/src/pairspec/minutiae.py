"""Minutia domain model: points, sets, pair geometry, and text file I/O.

Coordinates use the mathematical convention: y grows upward and angles are
counter-clockwise radians in [0, 2*pi). Files store orientation in degrees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from .errors import DegeneratePairError, MinutiaeParseError

TWO_PI = 2.0 * math.pi


def wrap_angle(theta: float) -> float:
    """Wrap an angle in radians into [0, 2*pi)."""
    wrapped = math.fmod(theta, TWO_PI)
    if wrapped < 0.0:
        wrapped += TWO_PI
    if wrapped >= TWO_PI:
        # fmod of a tiny negative angle can round up to exactly 2*pi
        return 0.0
    return wrapped


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Minutia:
    """A single fingerprint feature point.

    Attributes:
        x: Horizontal position in pixels.
        y: Vertical position in pixels, increasing upward.
        theta: Ridge orientation in radians, wrapped into [0, 2*pi).
        quality: Extractor confidence, an integer in [0, 100].
    """

    x: float
    y: float
    theta: float
    quality: int = 100

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        if not (
            math.isfinite(self.x)
            and math.isfinite(self.y)
            and math.isfinite(float(self.theta))
        ):
            raise ValueError(
                f"minutia fields must be finite, got ({self.x}, {self.y}, {self.theta})"
            )
        object.__setattr__(self, "theta", wrap_angle(float(self.theta)))
        if self.quality != int(self.quality):
            raise ValueError(f"quality must be an integer, got {self.quality!r}")
        q = int(self.quality)
        if not 0 <= q <= 100:
            raise ValueError(f"quality must be in [0, 100], got {q}")
        object.__setattr__(self, "quality", q)


@dataclass(frozen=True)
class MinutiaSet:
    """All minutiae extracted from one fingerprint image.

    Every point must lie inside the image rectangle; the image width also
    bounds which pairs are admissible for spectral summation.
    """

    minutiae: tuple[Minutia, ...]
    image_width: int
    image_height: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "minutiae", tuple(self.minutiae))
        if int(self.image_width) <= 0 or int(self.image_height) <= 0:
            raise ValueError("image dimensions must be positive")
        object.__setattr__(self, "image_width", int(self.image_width))
        object.__setattr__(self, "image_height", int(self.image_height))
        for i, m in enumerate(self.minutiae):
            if not isinstance(m, Minutia):
                raise TypeError(f"element {i} is not a Minutia: {m!r}")
            if not (0.0 <= m.x <= self.image_width and 0.0 <= m.y <= self.image_height):
                raise ValueError(
                    f"minutia {i} at ({m.x}, {m.y}) lies outside the "
                    f"{self.image_width}x{self.image_height} image"
                )

    def __len__(self) -> int:
        return len(self.minutiae)

    def __iter__(self) -> Iterator[Minutia]:
        return iter(self.minutiae)

    def __getitem__(self, index: int) -> Minutia:
        return self.minutiae[index]


@dataclass(frozen=True)
class PairGeometry:
    """Relative geometry of an ordered minutia pair.

    Attributes:
        r: Euclidean distance between the two points; strictly positive.
        phi: Direction angle of the vector from the second point to the
            first, full-quadrant, wrapped into [0, 2*pi).
    """

    r: float
    phi: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "r", float(self.r))
        object.__setattr__(self, "phi", wrap_angle(float(self.phi)))
        if not self.r > 0.0:
            raise ValueError(f"pair distance must be positive, got {self.r}")


@dataclass(frozen=True)
class PairDiagnostics:
    """Counts from one admissible-pair enumeration."""

    n_minutiae: int
    n_ordered: int        # all ordered pairs a != b
    n_admissible: int     # pairs kept for summation
    n_coincident: int     # dropped: zero distance
    n_too_wide: int       # dropped: diameter exceeds half the image width


# ---------------------------------------------------------------------------
# Pair geometry
# ---------------------------------------------------------------------------

def pair_geometry(a: Minutia, b: Minutia) -> PairGeometry:
    """Distance and direction angle of the ordered pair (a, b).

    The angle points from b toward a, so swapping the arguments adds pi
    (mod 2*pi) while the distance is unchanged. Coincident points raise
    DegeneratePairError.
    """
    dx = a.x - b.x
    dy = a.y - b.y
    if dx == 0.0 and dy == 0.0:
        raise DegeneratePairError(
            f"minutiae at ({a.x}, {a.y}) coincide; pair geometry undefined"
        )
    return PairGeometry(r=math.hypot(dx, dy), phi=math.atan2(dy, dx))


def _pair_mask(s: MinutiaSet) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Distance matrix plus admissibility mask over all ordered pairs."""
    x, y, _, _ = as_arrays(s)
    dx = x[:, None] - x[None, :]
    dy = y[:, None] - y[None, :]
    r = np.hypot(dx, dy)
    keep = np.ones(r.shape, dtype=bool)
    np.fill_diagonal(keep, False)  # the diagonal is excluded, not "dropped"
    coincident = (r == 0.0) & keep
    keep &= ~coincident
    too_wide = (2.0 * r > s.image_width) & keep
    keep &= ~too_wide
    return r, keep, np.stack([coincident, too_wide])


def admissible_pairs(s: MinutiaSet) -> list[tuple[int, int, PairGeometry]]:
    """Enumerate ordered pairs kept for spectral summation.

    Pairs are listed in lexicographic (first index, second index) order; both
    orderings of each unordered pair appear. A pair is dropped when the two
    points coincide or when its diameter exceeds half the image width.
    """
    out: list[tuple[int, int, PairGeometry]] = []
    if len(s) < 2:
        return out
    _, keep, _ = _pair_mask(s)
    a_idx, b_idx = np.nonzero(keep)  # row-major, hence lexicographic
    ms = s.minutiae
    for a, b in zip(a_idx.tolist(), b_idx.tolist()):
        out.append((a, b, pair_geometry(ms[a], ms[b])))
    return out


def pair_diagnostics(s: MinutiaSet) -> PairDiagnostics:
    """Count admissible and dropped ordered pairs without building them."""
    z = len(s)
    if z < 2:
        return PairDiagnostics(z, 0, 0, 0, 0)
    _, keep, dropped = _pair_mask(s)
    return PairDiagnostics(
        n_minutiae=z,
        n_ordered=z * (z - 1),
        n_admissible=int(keep.sum()),
        n_coincident=int(dropped[0].sum()),
        n_too_wide=int(dropped[1].sum()),
    )


def pair_arrays(s: MinutiaSet) -> tuple[np.ndarray, ...]:
    """Admissible ordered pairs as flat arrays (a, b, r, phi, dtheta).

    Same pairs and order as admissible_pairs, vectorized. dtheta is the raw
    orientation difference theta_a - theta_b (not wrapped; only its phase
    matters downstream).
    """
    z = len(s)
    if z < 2:
        empty_f = np.empty(0, dtype=float)
        return np.empty(0, dtype=int), np.empty(0, dtype=int), empty_f, empty_f, empty_f
    x, y, theta, _ = as_arrays(s)
    dx = x[:, None] - x[None, :]
    dy = y[:, None] - y[None, :]
    _, keep, _ = _pair_mask(s)
    a_idx, b_idx = np.nonzero(keep)
    dxs = dx[a_idx, b_idx]
    dys = dy[a_idx, b_idx]
    r = np.hypot(dxs, dys)
    phi = np.arctan2(dys, dxs)
    np.mod(phi, TWO_PI, out=phi)
    phi[phi >= TWO_PI] = 0.0
    dtheta = theta[a_idx] - theta[b_idx]
    return a_idx, b_idx, r, phi, dtheta


# ---------------------------------------------------------------------------
# Set operations
# ---------------------------------------------------------------------------

def as_arrays(s: MinutiaSet) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Column arrays (x, y, theta, quality) for vectorized kernels."""
    z = len(s)
    x = np.empty(z, dtype=float)
    y = np.empty(z, dtype=float)
    theta = np.empty(z, dtype=float)
    quality = np.empty(z, dtype=int)
    for i, m in enumerate(s.minutiae):
        x[i] = m.x
        y[i] = m.y
        theta[i] = m.theta
        quality[i] = m.quality
    return x, y, theta, quality


def filter_quality(s: MinutiaSet, min_quality: int) -> MinutiaSet:
    """Keep only minutiae whose quality is at least min_quality."""
    kept = tuple(m for m in s.minutiae if m.quality >= min_quality)
    return MinutiaSet(kept, s.image_width, s.image_height)


def translate(s: MinutiaSet, dx: float, dy: float) -> MinutiaSet:
    """Shift every minutia by (dx, dy); orientations are unchanged.

    The shifted points must still fit inside the image rectangle.
    """
    moved = tuple(
        Minutia(m.x + dx, m.y + dy, m.theta, m.quality) for m in s.minutiae
    )
    return MinutiaSet(moved, s.image_width, s.image_height)


def rotate(
    s: MinutiaSet,
    phi: float,
    center: tuple[float, float] | None = None,
) -> MinutiaSet:
    """Rigidly rotate the set counter-clockwise by phi radians.

    Positions rotate about center (image center by default) and every
    orientation advances by phi. Rotated points must stay in bounds.
    """
    if center is None:
        center = (s.image_width / 2.0, s.image_height / 2.0)
    cx, cy = center
    c, sn = math.cos(phi), math.sin(phi)
    moved = []
    for m in s.minutiae:
        rx, ry = m.x - cx, m.y - cy
        moved.append(
            Minutia(cx + c * rx - sn * ry, cy + sn * rx + c * ry,
                    m.theta + phi, m.quality)
        )
    return MinutiaSet(tuple(moved), s.image_width, s.image_height)


# ---------------------------------------------------------------------------
# Text file format
# ---------------------------------------------------------------------------
#
# Line 1:        "<image_width> <image_height>"
# Other lines:   "<x> <y> <theta_degrees> <quality>"
# '#' starts a comment line; blank lines are ignored. Angles are stored in
# degrees in [0, 360) and converted to radians on parse.

def parse_minutiae_text(text: str, path: str | Path = "<string>") -> MinutiaSet:
    """Parse minutiae file content; see parse_minutiae_file."""
    header: tuple[int, int] | None = None
    minutiae: list[Minutia] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if header is None:
            if len(fields) != 2:
                raise MinutiaeParseError(
                    path, line_no, f"header needs 2 fields, got {len(fields)}"
                )
            try:
                w, h = int(fields[0]), int(fields[1])
            except ValueError:
                raise MinutiaeParseError(path, line_no, "header fields must be integers")
            if w <= 0 or h <= 0:
                raise MinutiaeParseError(path, line_no, "image dimensions must be positive")
            header = (w, h)
            continue
        if len(fields) != 4:
            raise MinutiaeParseError(
                path, line_no, f"minutia line needs 4 fields, got {len(fields)}"
            )
        try:
            x, y, deg = float(fields[0]), float(fields[1]), float(fields[2])
            quality = int(fields[3])
        except ValueError:
            raise MinutiaeParseError(path, line_no, f"malformed minutia line: {line!r}")
        if not (math.isfinite(x) and math.isfinite(y) and math.isfinite(deg)):
            raise MinutiaeParseError(path, line_no, "non-finite value")
        if not (0.0 <= x <= header[0] and 0.0 <= y <= header[1]):
            raise MinutiaeParseError(
                path, line_no,
                f"point ({x}, {y}) outside the {header[0]}x{header[1]} image",
            )
        if not 0.0 <= deg < 360.0:
            raise MinutiaeParseError(
                path, line_no, f"orientation must be in [0, 360) degrees, got {deg}"
            )
        if not 0 <= quality <= 100:
            raise MinutiaeParseError(
                path, line_no, f"quality must be in [0, 100], got {quality}"
            )
        minutiae.append(Minutia(x, y, math.radians(deg), quality))
    if header is None:
        raise MinutiaeParseError(path, 1, "missing header line")
    return MinutiaSet(tuple(minutiae), header[0], header[1])


def parse_minutiae_file(path: str | Path) -> MinutiaSet:
    """Read a minutiae text file.

    The first content line holds "<image_width> <image_height>"; every later
    content line holds "<x> <y> <theta_degrees> <quality>" with the angle in
    [0, 360) and quality an integer in [0, 100]. Lines starting with '#' and
    blank lines are skipped. Violations raise MinutiaeParseError naming the
    offending line.
    """
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise MinutiaeParseError(p, 0, f"cannot read file: {exc}") from exc
    return parse_minutiae_text(text, p)


def format_minutiae(s: MinutiaSet, comment: str | None = None) -> str:
    """Render a minutia set in the text file format."""
    lines = []
    if comment:
        for part in comment.splitlines():
            lines.append(f"# {part}")
    lines.append(f"{s.image_width} {s.image_height}")
    for m in s.minutiae:
        deg = math.degrees(m.theta)
        if deg >= 360.0:  # radians-to-degrees rounding at the wrap point
            deg = 0.0
        lines.append(f"{m.x:.17g} {m.y:.17g} {deg:.17g} {m.quality}")
    return "\n".join(lines) + "\n"


def write_minutiae_file(path: str | Path, s: MinutiaSet, comment: str | None = None) -> None:
    Path(path).write_text(format_minutiae(s, comment))
