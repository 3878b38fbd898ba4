"""Exception types shared across the toolkit.

Every error raised by chromabench derives from ChromabenchError, so callers
can catch one type at the boundary and still tell failure modes apart.
"""


class ChromabenchError(Exception):
    """Base class for all chromabench errors."""


class InvalidArgument(ChromabenchError):
    """A value violates an operation's contract in a way no other error names."""


class InvalidColorSpace(ChromabenchError):
    """An image arrived in a different color space than the operation expects."""


class EmptyInput(ChromabenchError):
    """An image, image set, or summary has no content where content is required."""


class ShapeMismatch(ChromabenchError):
    """Operands disagree in dimensions, or an input is too small to process."""


class DegenerateEmbedding(ChromabenchError):
    """An embedding with zero norm cannot enter a cosine similarity."""


class InsufficientSamples(ChromabenchError):
    """Gaussian moment fitting needs at least two sample rows."""


class NotPSD(ChromabenchError):
    """A matrix is materially non-symmetric or has significantly negative eigenvalues."""


class InvalidAlpha(ChromabenchError):
    """Chroma scale factors and search bounds must be positive and ordered."""


class InvalidFeatureSet(ChromabenchError):
    """A feature matrix and its ids violate the container contract."""


class BadMagic(ChromabenchError):
    """A feature file does not start with the expected magic bytes."""


class VersionUnsupported(ChromabenchError):
    """A feature file declares a format version this build cannot read."""


class CorruptPayload(ChromabenchError):
    """A feature file's payload is truncated, oversized, or non-finite."""


class ManifestMismatch(ChromabenchError):
    """A feature file's sidecar manifest is missing or disagrees with the payload."""


class NoPairs(ChromabenchError):
    """Ground-truth and prediction directories share no filename stems."""


class PairingMismatch(ChromabenchError):
    """Strict pairing found unmatched files on one side."""
