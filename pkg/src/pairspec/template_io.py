"""Text serialization for spectral and magnitude templates.

Format (versioned, line oriented):

    pairspec-template 1
    family <L|M|G>
    variant <location|location_orientation>
    source <label or ->
    sigma <float or ->
    q <axis values>
    radial <axis values>
    data
    <q> <radial> <re> <im>
    ...

One data row per grid point, row-major. Floats are written with 17
significant digits, so a write/read round trip reproduces every value
bit-for-bit. Families L and M are pair spectra (integer q axis); family G is
the single-minutia magnitude spectrum, whose axes are the log-frequency
(alpha) and direction (beta) values and whose imaginary column is zero.
"""

from __future__ import annotations

from pathlib import Path
from typing import Union

import numpy as np

from .baseline import MagnitudeTemplate
from .errors import TemplateFormatError
from .grids import BaselineGrid, Family, GridSpec, Variant, family_to_kind
from .spectral import SpectralTemplate

MAGIC = "pairspec-template 1"

AnyTemplate = Union[SpectralTemplate, MagnitudeTemplate]


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def format_template(t: AnyTemplate) -> str:
    """Render a template in the text format."""
    if isinstance(t, SpectralTemplate):
        family = t.family
        q_line = " ".join(str(q) for q in t.grid.q_values)
        radial_line = " ".join(_fmt(v) for v in t.grid.radial_values)
        sigma = "-" if t.grid.sigma is None else _fmt(t.grid.sigma)
        rows = [
            f"{q} {_fmt(r)} {_fmt(val.real)} {_fmt(val.imag)}"
            for q, row in zip(t.grid.q_values, t.values)
            for r, val in zip(t.grid.radial_values, row)
        ]
    elif isinstance(t, MagnitudeTemplate):
        family = Family.MAGNITUDE
        q_line = " ".join(_fmt(a) for a in t.grid.alpha_values)
        radial_line = " ".join(_fmt(b) for b in t.grid.beta_values)
        sigma = _fmt(t.grid.sigma)
        rows = [
            f"{_fmt(a)} {_fmt(b)} {_fmt(val)} 0"
            for a, row in zip(t.grid.alpha_values, t.values)
            for b, val in zip(t.grid.beta_values, row)
        ]
    else:
        raise TypeError(f"not a template: {t!r}")
    source = t.source.replace("\n", " ").strip() or "-"
    header = [
        MAGIC,
        f"family {family.value}",
        f"variant {t.variant.value}",
        f"source {source}",
        f"sigma {sigma}",
        f"q {q_line}",
        f"radial {radial_line}",
        "data",
    ]
    return "\n".join(header + rows) + "\n"


def write_template(path: str | Path, t: AnyTemplate) -> None:
    Path(path).write_text(format_template(t))


def _header_value(lines: list[str], index: int, key: str, path) -> str:
    if index >= len(lines):
        raise TemplateFormatError(path, f"missing '{key}' line")
    line = lines[index]
    if line != key and not line.startswith(key + " "):
        raise TemplateFormatError(path, f"expected '{key} ...' on line {index + 1}")
    return line[len(key):].strip()


def parse_template(text: str, path: str | Path = "<string>") -> AnyTemplate:
    """Parse template file content; see read_template."""
    lines = [ln.rstrip("\n") for ln in text.splitlines()]
    if not lines or lines[0] != MAGIC:
        raise TemplateFormatError(path, f"missing magic line {MAGIC!r}")
    try:
        family = Family(_header_value(lines, 1, "family", path))
    except ValueError:
        raise TemplateFormatError(path, "unknown family tag")
    try:
        variant = Variant(_header_value(lines, 2, "variant", path))
    except ValueError:
        raise TemplateFormatError(path, "unknown variant")
    source = _header_value(lines, 3, "source", path)
    if source == "-":
        source = ""
    sigma_text = _header_value(lines, 4, "sigma", path)
    q_text = _header_value(lines, 5, "q", path)
    radial_text = _header_value(lines, 6, "radial", path)
    if _header_value(lines, 7, "data", path) != "":
        raise TemplateFormatError(path, "malformed 'data' separator")

    try:
        radial_values = tuple(float(v) for v in radial_text.split())
        if family is Family.MAGNITUDE:
            axis_a = tuple(float(v) for v in q_text.split())
        else:
            axis_a = tuple(int(v) for v in q_text.split())
        sigma = None if sigma_text == "-" else float(sigma_text)
    except ValueError:
        raise TemplateFormatError(path, "malformed axis or sigma value")

    rows = lines[8:]
    while rows and not rows[-1].strip():
        rows.pop()
    expected_rows = len(axis_a) * len(radial_values)
    if len(rows) != expected_rows:
        raise TemplateFormatError(
            path, f"expected {expected_rows} data rows, found {len(rows)}"
        )

    values = np.empty((len(axis_a), len(radial_values)), dtype=complex)
    for idx, row in enumerate(rows):
        fields = row.split()
        if len(fields) != 4:
            raise TemplateFormatError(
                path, f"data row {idx + 1} needs 4 fields, got {len(fields)}"
            )
        i, j = divmod(idx, len(radial_values))
        try:
            row_a = float(fields[0])
            row_r = float(fields[1])
            re, im = float(fields[2]), float(fields[3])
        except ValueError:
            raise TemplateFormatError(path, f"malformed data row {idx + 1}: {row!r}")
        if row_a != float(axis_a[i]) or row_r != radial_values[j]:
            raise TemplateFormatError(
                path, f"data row {idx + 1} is out of grid order"
            )
        values[i, j] = complex(re, im)

    if family is Family.MAGNITUDE:
        if sigma is None:
            raise TemplateFormatError(path, "magnitude templates need a sigma")
        if np.any(values.imag != 0.0):
            raise TemplateFormatError(path, "magnitude templates must be real")
        grid = BaselineGrid(axis_a, radial_values, sigma)
        try:
            return MagnitudeTemplate(grid, variant, values.real, source)
        except ValueError as exc:
            raise TemplateFormatError(path, str(exc))
    kind = family_to_kind(family)
    try:
        grid = GridSpec(kind, axis_a, radial_values, sigma)
        return SpectralTemplate(grid, variant, values, source)
    except ValueError as exc:
        raise TemplateFormatError(path, str(exc))


def read_template(path: str | Path) -> AnyTemplate:
    """Read a template text file written by write_template.

    Returns a SpectralTemplate for families L and M, a MagnitudeTemplate for
    family G. Format violations raise TemplateFormatError.
    """
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise TemplateFormatError(p, f"cannot read file: {exc}") from exc
    return parse_template(text, p)
