"""Error types raised by the feature export pipeline."""

from __future__ import annotations

__all__ = [
    "ExtractorError",
    "InvalidJob",
    "NoInputs",
    "WeightsUnavailable",
]


class ExtractorError(Exception):
    """Base class for everything this package raises on purpose."""


class InvalidJob(ExtractorError):
    """The job description itself is unusable (bad batch size, wrong model for the op, ...)."""


class NoInputs(ExtractorError):
    """Nothing to embed: empty directory, no readable images, or an all-blank prompts file."""


class WeightsUnavailable(ExtractorError):
    """Pretrained checkpoint could not be loaded (usually: no network access to the hub)."""
