"""Pretrained-network feature export to CFS files.

Inception-v3 pool3 rows feed FID/HI-FID in the chromabench core; CLIP image
and text embeddings feed its CLIP score. Everything lands in the same CFS v1
container the core reads back with load_cfs.
"""

from .encoders import ClipBundle, load_clip, load_inception
from .errors import (
    ExtractorError,
    InvalidJob,
    NoInputs,
    WeightsUnavailable,
)
from .extract import ExtractResult, extract_clip, extract_inception
from .job import DEFAULT_CLIP_VARIANT, INCEPTION_DIM, ExtractJob, ExtractModel

__all__ = [
    "ClipBundle",
    "DEFAULT_CLIP_VARIANT",
    "ExtractJob",
    "ExtractModel",
    "ExtractResult",
    "ExtractorError",
    "INCEPTION_DIM",
    "InvalidJob",
    "NoInputs",
    "WeightsUnavailable",
    "extract_clip",
    "extract_inception",
    "load_clip",
    "load_inception",
]
