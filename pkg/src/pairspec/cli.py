"""Command-line interface.

Commands: template (minutiae file -> template file), match (two minutiae or
template files -> one score line), eval (database directory -> report CSVs),
synth (write a synthetic database), bench (timing + cost-model report).
Exit codes: 0 success, 2 usage error, 3 data error.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from .baseline import magnitude_template
from .errors import IncompatibleTemplateError, PairspecError
from .evaluation import (
    default_config,
    load_database,
    restrict_persons,
    run_evaluation,
    write_comparisons_csv,
    write_histogram_csv,
    write_roc_csv,
    write_summary,
)
from .grids import Family, Variant, default_baseline_grid, default_grid
from .matching import (
    MatchResult,
    ROTATION_PRESETS,
    match_with_rotation,
    rotation_angles,
    score,
)
from .minutiae import parse_minutiae_file, filter_quality
from .profiles import get_profile
from .spectral import SpectralTemplate, compute_spectrum, transform_template
from .synth import NoiseModel, make_database, write_database
from .template_io import read_template, write_template
from . import cost as cost_mod


class UsageError(Exception):
    """Bad flag combination or out-of-range value caught after parsing."""


# ---------------------------------------------------------------------------
# Shared flag handling
# ---------------------------------------------------------------------------

def _add_family_flags(p: argparse.ArgumentParser, families: tuple[str, ...] = ("M", "L")) -> None:
    p.add_argument(
        "--family", choices=list(families), default="M",
        help="template family: M = direct radial grid, L = log-frequency grid"
             + (", G = baseline magnitude spectrum" if "G" in families else ""),
    )
    p.add_argument(
        "--profile", choices=["mcyt", "verifinger", "synthetic"], default=None,
        help="named capture profile supplying image geometry and search preset",
    )
    p.add_argument(
        "--min-quality", type=int, default=45, metavar="Q",
        help="drop minutiae below this quality before pairing (default 45)",
    )


def _add_rotation_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--rotation", default="none",
        choices=sorted(ROTATION_PRESETS) + ["profile"],
        help="rotation-search preset; 'profile' takes the profile's preset "
             "(default none: no search)",
    )
    p.add_argument(
        "--angles-deg", default=None, metavar="LIST",
        help="explicit comma-separated candidate angles in degrees "
             "(overrides --rotation)",
    )


def _resolve_angles(args) -> tuple[float, ...]:
    if args.angles_deg is not None:
        try:
            degs = [float(tok) for tok in args.angles_deg.split(",") if tok.strip()]
        except ValueError:
            raise UsageError(f"bad --angles-deg list: {args.angles_deg!r}")
        if not degs:
            raise UsageError("--angles-deg must list at least one angle")
        return tuple(math.radians(d) for d in degs)
    preset = args.rotation
    if preset == "profile":
        if args.profile is None:
            raise UsageError("--rotation profile needs --profile")
        preset = get_profile(args.profile).rotation_preset
    return rotation_angles(preset)


def _profile_width(args, fallback: int | None) -> int | None:
    if args.profile is not None:
        return get_profile(args.profile).image_width
    return fallback


def _check_positive(name: str, value: int, minimum: int = 1) -> int:
    if value < minimum:
        raise UsageError(f"{name} must be >= {minimum}, got {value}")
    return value


# ---------------------------------------------------------------------------
# template
# ---------------------------------------------------------------------------

def _cmd_template(args) -> int:
    s = parse_minutiae_file(args.input)
    s = filter_quality(s, args.min_quality)
    variant = Variant(args.variant)
    source = Path(args.input).name
    if args.family == "G":
        t = magnitude_template(s, default_baseline_grid(), variant, source=source)
    else:
        family = Family(args.family)
        grid = default_grid(family, variant, _profile_width(args, s.image_width))
        t = compute_spectrum(s, family, variant, grid, source=source)
    write_template(args.output, t)
    return 0


# ---------------------------------------------------------------------------
# match
# ---------------------------------------------------------------------------

def _load_side(path: str, args):
    """A match operand: .xyt gives a minutia set, anything else a template file."""
    if path.endswith(".xyt"):
        s = filter_quality(parse_minutiae_file(path), args.min_quality)
        return ("minutiae", s)
    return ("template", read_template(path))


def _templates_from_minutiae(s, args, width: int | None):
    family = Family(args.family)
    loc = compute_spectrum(
        s, family, Variant.LOCATION, default_grid(family, Variant.LOCATION, width)
    )
    ori = compute_spectrum(
        s, family, Variant.LOCATION_ORIENTATION,
        default_grid(family, Variant.LOCATION_ORIENTATION, width),
    )
    return loc, ori


def _best_single_variant(enrolled: SpectralTemplate, probe: SpectralTemplate, angles):
    best_key = None
    best = None
    for phi in angles:
        s = score(enrolled, transform_template(probe, phi))
        key = (-s, abs(phi), phi)
        if best_key is None or key < best_key:
            best_key = key
            best = (s, phi)
    assert best is not None
    return best


def _cmd_match(args) -> int:
    angles = _resolve_angles(args)
    kind_a, side_a = _load_side(args.enrolled, args)
    kind_b, side_b = _load_side(args.probe, args)

    if kind_a == "minutiae" and kind_b == "minutiae":
        width = _profile_width(args, side_a.image_width)
        result = match_with_rotation(
            _templates_from_minutiae(side_a, args, width),
            _templates_from_minutiae(side_b, args, width),
            angles,
        )
    else:
        if kind_a == "template" and kind_b == "template":
            t_a, t_b = side_a, side_b
            if not isinstance(t_a, SpectralTemplate) or not isinstance(t_b, SpectralTemplate):
                raise IncompatibleTemplateError(
                    "match supports pair-spectrum template files only"
                )
        elif kind_a == "template":
            t_a = side_a
            t_b = _match_variant_template(side_b, side_a, args)
        else:
            t_b = side_b
            t_a = _match_variant_template(side_a, side_b, args)
        s, phi = _best_single_variant(t_a, t_b, angles)
        if t_a.variant is Variant.LOCATION:
            result = MatchResult(s, 0.0, s, phi)
        else:
            result = MatchResult(0.0, s, s, phi)

    print(f"{result.score_location:.9g} {result.score_orientation:.9g} "
          f"{result.fused:.9g} {result.phi_opt:.9g}")
    return 0


def _match_variant_template(s, template: SpectralTemplate, args):
    """Build, from a minutia set, the template matching an existing one."""
    if not isinstance(template, SpectralTemplate):
        raise IncompatibleTemplateError("match supports pair-spectrum template files only")
    return compute_spectrum(s, template.family, template.variant, template.grid)


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------

def _cmd_eval(args) -> int:
    db = load_database(args.database)
    if args.persons:
        persons = [tok for tok in args.persons.split(",") if tok.strip()]
        if not persons:
            raise UsageError("--persons must list at least one person")
        db = restrict_persons(db, persons)
    first_set = next(iter(db.values()))[0][1]
    width = _profile_width(args, first_set.image_width)
    config = default_config(
        family=Family(args.family),
        image_width=width,
        angles=_resolve_angles(args),
        min_quality=args.min_quality,
    )
    report = run_evaluation(db, config, seed=args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_comparisons_csv(out / "comparisons.csv", list(report.genuine) + list(report.impostor))
    write_roc_csv(out / "roc.csv", report.roc)
    write_histogram_csv(out / "histogram.csv", report.phi_histogram)
    line = write_summary(out / "summary.txt", report)
    if report.skipped_fingers:
        print(
            f"warning: skipped {len(report.skipped_fingers)} finger(s) with "
            f"fewer than 2 captures", file=sys.stderr,
        )
    print(f"reports written to {out}", file=sys.stderr)
    print(line)
    return 0


# ---------------------------------------------------------------------------
# synth
# ---------------------------------------------------------------------------

def _cmd_synth(args) -> int:
    profile = get_profile(args.profile or "synthetic")
    fingers = _check_positive("--fingers", args.fingers if args.fingers is not None else profile.fingers)
    images = _check_positive("--images", args.images if args.images is not None else profile.images)
    z = _check_positive("--minutiae", args.minutiae if args.minutiae is not None else profile.z, 2)
    width = _check_positive("--width", args.width if args.width is not None else profile.image_width)
    height = _check_positive("--height", args.height if args.height is not None else profile.image_height)
    seed = args.seed if args.seed is not None else profile.seed
    base = profile.noise
    try:
        noise = NoiseModel(
            jitter_sigma=args.jitter_sigma if args.jitter_sigma is not None else base.jitter_sigma,
            theta_sigma=args.theta_sigma if args.theta_sigma is not None else base.theta_sigma,
            drop_prob=args.drop_prob if args.drop_prob is not None else base.drop_prob,
            spur_count=args.spurs if args.spurs is not None else base.spur_count,
            rot_range=math.radians(args.rot_range_deg) if args.rot_range_deg is not None else base.rot_range,
            trans_range=args.trans_range if args.trans_range is not None else base.trans_range,
        )
    except ValueError as exc:
        raise UsageError(str(exc))
    db = make_database(fingers, images, z, width, height, noise, seed)
    write_database(args.outdir, db)
    print(f"wrote {fingers * images} capture files for {fingers} fingers to {args.outdir}")
    return 0


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------

def _cmd_bench(args) -> int:
    profile = get_profile(args.profile or "verifinger")
    z = args.z if args.z is not None else profile.z
    if z < 2:
        raise UsageError(f"--z must be >= 2, got {z}")
    _check_positive("--repeats", args.repeats)
    _check_positive("--n-phi", args.n_phi)
    report = cost_mod.run_bench(
        z=z,
        image_width=profile.image_width,
        image_height=profile.image_height,
        n_phi=args.n_phi,
        repeats=args.repeats,
        seed=args.seed,
    )
    print(report.format())
    return 0


# ---------------------------------------------------------------------------
# Parser / entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pairspec",
        description="Minutia-pair spectral fingerprint templates: build, match, evaluate.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("template", help="compute a template from a minutiae file")
    p.add_argument("input", help="minutiae .xyt file")
    p.add_argument("output", help="template file to write")
    _add_family_flags(p, families=("M", "L", "G"))
    p.add_argument(
        "--variant", choices=[v.value for v in Variant],
        default=Variant.LOCATION_ORIENTATION.value,
    )
    p.set_defaults(handler=_cmd_template)

    p = sub.add_parser("match", help="score two minutiae or template files")
    p.add_argument("enrolled", help=".xyt or template file")
    p.add_argument("probe", help=".xyt or template file")
    _add_family_flags(p)
    _add_rotation_flags(p)
    p.set_defaults(handler=_cmd_match)

    p = sub.add_parser("eval", help="run the verification protocol on a database directory")
    p.add_argument("database", help="directory of <person>_<finger>_<image>.xyt files")
    p.add_argument("--out", default="pairspec-eval", help="report directory (default ./pairspec-eval)")
    p.add_argument("--seed", type=int, default=0, help="impostor-draw seed (default 0)")
    p.add_argument("--persons", default=None, metavar="LIST",
                   help="comma-separated person ids to keep (default all)")
    _add_family_flags(p)
    _add_rotation_flags(p)
    p.set_defaults(handler=_cmd_eval)

    p = sub.add_parser("synth", help="write a synthetic minutiae database")
    p.add_argument("outdir", help="directory to create")
    p.add_argument("--profile", choices=["mcyt", "verifinger", "synthetic"], default=None)
    p.add_argument("--fingers", type=int, default=None)
    p.add_argument("--images", type=int, default=None)
    p.add_argument("--minutiae", type=int, default=None, help="base minutiae per finger")
    p.add_argument("--width", type=int, default=None)
    p.add_argument("--height", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--jitter-sigma", type=float, default=None, metavar="PX")
    p.add_argument("--theta-sigma", type=float, default=None, metavar="RAD")
    p.add_argument("--drop-prob", type=float, default=None, metavar="P")
    p.add_argument("--spurs", type=int, default=None)
    p.add_argument("--rot-range-deg", type=float, default=None, metavar="DEG")
    p.add_argument("--trans-range", type=float, default=None, metavar="PX")
    p.set_defaults(handler=_cmd_synth)

    p = sub.add_parser("bench", help="time the kernels and print the cost model")
    p.add_argument("--profile", choices=["mcyt", "verifinger", "synthetic"], default=None)
    p.add_argument("--z", type=int, default=None, help="minutiae per capture (default 35)")
    p.add_argument("--n-phi", type=int, default=1, help="candidate rotations in the model")
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse has already printed its message
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PairspecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
