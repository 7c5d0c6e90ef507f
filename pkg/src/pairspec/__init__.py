"""Translation-invariant minutia-pair spectral templates for fingerprints.

The pipeline: parse or synthesize minutia sets, turn each into a fixed-length
complex template by summing phase terms over minutia pairs, compare templates
by the magnitude of their complex Pearson correlation (fusing the location
and location-orientation variants), and evaluate verification accuracy with a
genuine/impostor ROC protocol. A single-minutia magnitude spectrum is
included as the benchmark it competes with.
"""

from .baseline import (
    BaselineMatch,
    MagnitudeTemplate,
    baseline_match,
    compute_magnitude_spectrum,
    magnitude_template,
)
from .cost import (
    BenchReport,
    CostModel,
    per_minutia_terms,
    run_bench,
    summation_terms,
    template_terms,
    verification_cost,
)
from .errors import (
    DegeneratePairError,
    DegenerateScoreError,
    GenerationError,
    IncompatibleTemplateError,
    InsufficientMinutiaeError,
    MinutiaeParseError,
    PairspecError,
    ProtocolError,
    TemplateFormatError,
    UnsupportedTransformError,
)
from .estimators import MagnitudeSpectrum, PairSpectrum
from .evaluation import (
    ComparisonRecord,
    EvalReport,
    MatchConfig,
    RocPoint,
    default_config,
    genuine_comparisons,
    impostor_comparisons,
    load_database,
    optimal_angle_histogram,
    restrict_persons,
    roc_and_eer,
    run_evaluation,
)
from .grids import (
    BaselineGrid,
    Family,
    GridKind,
    GridSpec,
    Variant,
    default_baseline_grid,
    default_grid,
    log_freq_grid,
    radial_grid,
)
from .matching import (
    MatchResult,
    ROTATION_PRESETS,
    complex_pearson,
    fused_score,
    match_with_rotation,
    rotation_angles,
    score,
)
from .minutiae import (
    Minutia,
    MinutiaSet,
    PairDiagnostics,
    PairGeometry,
    admissible_pairs,
    filter_quality,
    pair_diagnostics,
    pair_geometry,
    parse_minutiae_file,
    parse_minutiae_text,
    rotate,
    translate,
    wrap_angle,
    write_minutiae_file,
)
from .profiles import PROFILES, Profile, get_profile
from .spectral import (
    SpectralTemplate,
    compute_log_spectrum,
    compute_radial_spectrum,
    compute_spectrum,
    transform_template,
)
from .synth import NoiseModel, generate_finger, make_database, perturb, write_database
from .template_io import format_template, parse_template, read_template, write_template

__version__ = "0.1.0"

__all__ = [
    "BaselineGrid",
    "BaselineMatch",
    "BenchReport",
    "ComparisonRecord",
    "CostModel",
    "DegeneratePairError",
    "DegenerateScoreError",
    "EvalReport",
    "Family",
    "GenerationError",
    "GridKind",
    "GridSpec",
    "IncompatibleTemplateError",
    "InsufficientMinutiaeError",
    "MagnitudeSpectrum",
    "MagnitudeTemplate",
    "MatchConfig",
    "MatchResult",
    "Minutia",
    "MinutiaSet",
    "MinutiaeParseError",
    "NoiseModel",
    "PROFILES",
    "PairDiagnostics",
    "PairGeometry",
    "PairSpectrum",
    "PairspecError",
    "Profile",
    "ProtocolError",
    "ROTATION_PRESETS",
    "RocPoint",
    "SpectralTemplate",
    "TemplateFormatError",
    "UnsupportedTransformError",
    "Variant",
    "admissible_pairs",
    "baseline_match",
    "complex_pearson",
    "compute_log_spectrum",
    "compute_magnitude_spectrum",
    "compute_radial_spectrum",
    "compute_spectrum",
    "default_baseline_grid",
    "default_config",
    "default_grid",
    "filter_quality",
    "format_template",
    "fused_score",
    "generate_finger",
    "genuine_comparisons",
    "get_profile",
    "impostor_comparisons",
    "load_database",
    "log_freq_grid",
    "magnitude_template",
    "make_database",
    "match_with_rotation",
    "optimal_angle_histogram",
    "pair_diagnostics",
    "pair_geometry",
    "parse_minutiae_file",
    "parse_minutiae_text",
    "parse_template",
    "per_minutia_terms",
    "perturb",
    "radial_grid",
    "read_template",
    "restrict_persons",
    "roc_and_eer",
    "rotate",
    "rotation_angles",
    "run_bench",
    "run_evaluation",
    "score",
    "summation_terms",
    "template_terms",
    "transform_template",
    "translate",
    "verification_cost",
    "wrap_angle",
    "write_database",
    "write_minutiae_file",
    "write_template",
]
