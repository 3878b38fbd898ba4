"""chromabench: colorization evaluation with saturation-bias-aware FID.

The core measurement: fit Gaussians to per-image features of a ground-truth
set and a predicted set and take their Fréchet distance (FID). The
hue-invariant variant first rescales the predicted set's chroma so its mean
colorfulness matches the ground truth's, which separates a global
saturation offset from genuine color structure errors. Supporting pieces:
exact sRGB/CIELAB/YUV conversions, colorfulness, PSNR/SSIM, CLIP-style
cosine scoring of precomputed embeddings, a portable feature-file format,
and a benchmark harness with a CLI.
"""

from .colorspace import (
    ColorSpace,
    GrayImage,
    PlanarImage,
    lab_to_srgb,
    luminance_replace,
    resize_bilinear,
    srgb_to_lab,
    srgb_to_yuv,
    to_grayscale,
    yuv_to_srgb,
)
from .distribution import (
    AlphaSolution,
    GaussianStats,
    chroma_scale,
    fid,
    fit_gaussian,
    frechet_distance,
    hue_invariant_fid,
    optimize_alpha,
    sqrtm_psd,
)
from .errors import (
    BadMagic,
    ChromabenchError,
    CorruptPayload,
    DegenerateEmbedding,
    EmptyInput,
    InsufficientSamples,
    InvalidAlpha,
    InvalidArgument,
    InvalidColorSpace,
    InvalidFeatureSet,
    ManifestMismatch,
    NoPairs,
    NotPSD,
    PairingMismatch,
    ShapeMismatch,
    VersionUnsupported,
)
from .features import (
    FeatureExtractor,
    FeatureSet,
    PixelStatsExtractor,
    load_cfs,
    manifest_path,
    pixel_stats_extractor,
    save_cfs,
)
from .harness import (
    METRIC_ORDER,
    EvalConfig,
    ExtractorMode,
    Metric,
    MethodRow,
    MethodSpec,
    MetricReport,
    OutputFormat,
    PairingResult,
    SweepPoint,
    SynthMode,
    clean_caption,
    ingest_pairs,
    parse_metric,
    run_benchmark,
    saturation_sweep,
    synth_set,
)
from .imageio import list_images, load_image, save_image
from .metrics import (
    CFSummary,
    Embedding,
    EmbeddingKind,
    clip_loss,
    clip_score,
    colorfulness,
    delta_colorfulness,
    psnr,
    ssim,
)
from .report import render_csv, render_markdown, render_sweep_csv, write_report, write_sweep

__version__ = "0.1.0"

__all__ = [
    "METRIC_ORDER",
    "AlphaSolution",
    "BadMagic",
    "CFSummary",
    "ChromabenchError",
    "ColorSpace",
    "CorruptPayload",
    "DegenerateEmbedding",
    "Embedding",
    "EmbeddingKind",
    "EmptyInput",
    "EvalConfig",
    "ExtractorMode",
    "FeatureExtractor",
    "FeatureSet",
    "GaussianStats",
    "GrayImage",
    "InsufficientSamples",
    "InvalidAlpha",
    "InvalidArgument",
    "InvalidColorSpace",
    "InvalidFeatureSet",
    "ManifestMismatch",
    "Metric",
    "MethodRow",
    "MethodSpec",
    "MetricReport",
    "NoPairs",
    "NotPSD",
    "OutputFormat",
    "PairingMismatch",
    "PairingResult",
    "PixelStatsExtractor",
    "PlanarImage",
    "ShapeMismatch",
    "SweepPoint",
    "SynthMode",
    "VersionUnsupported",
    "chroma_scale",
    "clean_caption",
    "clip_loss",
    "clip_score",
    "colorfulness",
    "delta_colorfulness",
    "fid",
    "fit_gaussian",
    "frechet_distance",
    "hue_invariant_fid",
    "ingest_pairs",
    "lab_to_srgb",
    "list_images",
    "load_cfs",
    "load_image",
    "luminance_replace",
    "manifest_path",
    "optimize_alpha",
    "parse_metric",
    "pixel_stats_extractor",
    "psnr",
    "render_csv",
    "render_markdown",
    "render_sweep_csv",
    "resize_bilinear",
    "run_benchmark",
    "saturation_sweep",
    "save_cfs",
    "save_image",
    "sqrtm_psd",
    "srgb_to_lab",
    "srgb_to_yuv",
    "ssim",
    "synth_set",
    "to_grayscale",
    "write_report",
    "write_sweep",
    "yuv_to_srgb",
    "__version__",
]
