"""Exception types shared across the package."""


class PairspecError(Exception):
    """Base class for every error this package raises on purpose."""


class MinutiaeParseError(PairspecError):
    """A minutiae text file violates the expected format."""

    def __init__(self, path, line_no: int, message: str):
        self.path = str(path)
        self.line_no = line_no
        super().__init__(f"{self.path}:{line_no}: {message}")


class DegeneratePairError(PairspecError):
    """Two minutiae coincide, so their relative geometry is undefined."""


class InsufficientMinutiaeError(PairspecError):
    """A minutia set yields no admissible pairs (or no points at all)."""


class DegenerateScoreError(PairspecError):
    """A correlation input has zero variance, so the score is undefined."""


class IncompatibleTemplateError(PairspecError):
    """Two templates disagree on grid or variant and cannot be compared."""


class UnsupportedTransformError(PairspecError):
    """The requested transform has no defined action on this template family."""


class TemplateFormatError(PairspecError):
    """A template file violates the serialization format."""

    def __init__(self, path, message: str):
        self.path = str(path)
        super().__init__(f"{self.path}: {message}")


class GenerationError(PairspecError):
    """Synthetic data generation could not satisfy its placement constraints."""


class ProtocolError(PairspecError):
    """An evaluation protocol precondition does not hold."""
