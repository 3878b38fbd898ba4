"""Per-image and per-pair metrics: colorfulness, CLIP cosine scores, PSNR, SSIM."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from numpy.typing import NDArray

from .colorspace import ColorSpace, PlanarImage
from .errors import (
    DegenerateEmbedding,
    EmptyInput,
    InvalidArgument,
    InvalidColorSpace,
    ShapeMismatch,
)

__all__ = [
    "CFSummary",
    "Embedding",
    "EmbeddingKind",
    "colorfulness",
    "delta_colorfulness",
    "clip_score",
    "clip_loss",
    "psnr",
    "ssim",
]

# Opponent-channel colorfulness works on the 0..255 scale by convention.
_CF_SCALE = 255.0
_CF_MEAN_WEIGHT = 0.3

# BT.601 luma weights for the SSIM grayscale projection.
_LUMA = np.array([0.299, 0.587, 0.114])

_SSIM_WINDOW = 11
_SSIM_SIGMA = 1.5
_SSIM_K1 = 0.01
_SSIM_K2 = 0.03


def _require_srgb(img: PlanarImage, op: str) -> None:
    if img.space is not ColorSpace.SRGB:
        raise InvalidColorSpace(f"{op} expects an srgb image, got {img.space.value}")


def colorfulness(img: PlanarImage) -> float:
    """Opponent-channel colorfulness: 0.3 * |mean| + |std| over (rg, yb).

    rg = R - G and yb = (R + G)/2 - B are taken on the 0..255 scale with
    population standard deviations. Neutral images score 0; the score is
    homogeneous of degree one under chroma scaling that does not clip.
    """
    _require_srgb(img, "colorfulness")
    if img.is_empty:
        raise EmptyInput("colorfulness of an empty image is undefined")
    x = img.data * _CF_SCALE
    rg = x[..., 0] - x[..., 1]
    yb = 0.5 * (x[..., 0] + x[..., 1]) - x[..., 2]
    mu = math.hypot(float(rg.mean()), float(yb.mean()))
    sigma = math.hypot(float(rg.std()), float(yb.std()))
    return _CF_MEAN_WEIGHT * mu + sigma


@dataclass(frozen=True)
class CFSummary:
    """Per-image colorfulness values for one image set, with their mean."""

    per_image: tuple[tuple[str, float], ...]
    mean_cf: float

    def __post_init__(self) -> None:
        values = [v for _, v in self.per_image]
        if any(v < 0.0 or not math.isfinite(v) for v in values):
            raise InvalidArgument("colorfulness values must be finite and non-negative")
        if values:
            mean = float(np.mean(values))
            if abs(mean - self.mean_cf) > 1e-12 * max(1.0, abs(mean)):
                raise InvalidArgument("mean_cf disagrees with the per-image values")
        elif self.mean_cf != 0.0:
            raise InvalidArgument("an empty summary must have mean_cf = 0")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, float]]) -> "CFSummary":
        items = tuple((str(i), float(v)) for i, v in pairs)
        mean = float(np.mean([v for _, v in items])) if items else 0.0
        return cls(per_image=items, mean_cf=mean)

    def __len__(self) -> int:
        return len(self.per_image)


def delta_colorfulness(gt: CFSummary, pred: CFSummary) -> float:
    """Absolute difference of the two sets' mean colorfulness."""
    if len(gt) == 0 or len(pred) == 0:
        raise EmptyInput("delta_colorfulness needs non-empty summaries")
    return abs(gt.mean_cf - pred.mean_cf)


class EmbeddingKind(enum.Enum):
    IMAGE = "image"
    TEXT = "text"


@dataclass(frozen=True)
class Embedding:
    """A single feature vector with the modality it came from."""

    id: str
    kind: EmbeddingKind
    vector: NDArray[np.float64]

    def __post_init__(self) -> None:
        vec = np.array(self.vector, dtype=np.float64)
        vec.setflags(write=False)
        if vec.ndim != 1 or vec.size == 0:
            raise InvalidArgument("embedding vector must be 1-D and non-empty")
        if not np.isfinite(vec).all():
            raise InvalidArgument("embedding vector must be finite")
        object.__setattr__(self, "vector", vec)

    @property
    def dim(self) -> int:
        return int(self.vector.size)


def _cosine(u: Embedding, v: Embedding) -> float:
    if u.dim != v.dim:
        raise ShapeMismatch(f"embedding dims differ: {u.dim} vs {v.dim}")
    nu = float(np.linalg.norm(u.vector))
    nv = float(np.linalg.norm(v.vector))
    if nu == 0.0 or nv == 0.0:
        raise DegenerateEmbedding("cosine similarity with a zero-norm embedding")
    return float(np.dot(u.vector, v.vector) / (nu * nv))


def clip_score(image_emb: Embedding, text_emb: Embedding) -> float:
    """100 times the cosine similarity of an image embedding and a text embedding."""
    if image_emb.kind is not EmbeddingKind.IMAGE:
        raise InvalidArgument("clip_score expects an image embedding first")
    if text_emb.kind is not EmbeddingKind.TEXT:
        raise InvalidArgument("clip_score expects a text embedding second")
    return 100.0 * _cosine(image_emb, text_emb)


def clip_loss(image_emb: Embedding, text_emb: Embedding) -> float:
    """1 minus the cosine similarity; exactly 1 - clip_score/100 by construction."""
    return 1.0 - clip_score(image_emb, text_emb) / 100.0


def _paired_luma(a: PlanarImage, b: PlanarImage, op: str) -> tuple[np.ndarray, np.ndarray]:
    _require_srgb(a, op)
    _require_srgb(b, op)
    if a.data.shape != b.data.shape:
        raise ShapeMismatch(f"{op} needs equal shapes, got {a.data.shape} vs {b.data.shape}")
    if a.is_empty:
        raise EmptyInput(f"{op} of empty images is undefined")
    return a.data @ _LUMA, b.data @ _LUMA


def psnr(a: PlanarImage, b: PlanarImage) -> float:
    """Peak signal-to-noise ratio in dB over all channels, peak = 1.0.

    Identical images return math.inf; reports serialize that as "inf".
    """
    _require_srgb(a, "psnr")
    _require_srgb(b, "psnr")
    if a.data.shape != b.data.shape:
        raise ShapeMismatch(f"psnr needs equal shapes, got {a.data.shape} vs {b.data.shape}")
    if a.is_empty:
        raise EmptyInput("psnr of empty images is undefined")
    mse = float(np.mean((a.data - b.data) ** 2))
    if mse == 0.0:
        return math.inf
    return -10.0 * math.log10(mse)


def _gaussian_kernel(size: int, sigma: float) -> np.ndarray:
    offsets = np.arange(size, dtype=np.float64) - (size - 1) / 2.0
    k = np.exp(-(offsets**2) / (2.0 * sigma**2))
    return k / k.sum()


def _window_mean(x: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    size = kernel.size
    t = sliding_window_view(x, size, axis=0) @ kernel
    return sliding_window_view(t, size, axis=1) @ kernel


def ssim(a: PlanarImage, b: PlanarImage) -> float:
    """Single-scale SSIM on BT.601 luma with an 11x11 Gaussian window.

    Local statistics use sigma = 1.5, stabilizers K1 = 0.01 and K2 = 0.03
    at dynamic range 1.0, and only fully valid window positions enter the
    mean. Images smaller than the window are rejected.
    """
    x, y = _paired_luma(a, b, "ssim")
    if min(x.shape) < _SSIM_WINDOW:
        raise ShapeMismatch(f"ssim needs images at least {_SSIM_WINDOW} pixels on a side")

    kernel = _gaussian_kernel(_SSIM_WINDOW, _SSIM_SIGMA)
    mu_x = _window_mean(x, kernel)
    mu_y = _window_mean(y, kernel)
    var_x = _window_mean(x * x, kernel) - mu_x * mu_x
    var_y = _window_mean(y * y, kernel) - mu_y * mu_y
    cov_xy = _window_mean(x * y, kernel) - mu_x * mu_y

    c1 = _SSIM_K1**2
    c2 = _SSIM_K2**2
    num = (2.0 * mu_x * mu_y + c1) * (2.0 * cov_xy + c2)
    den = (mu_x * mu_x + mu_y * mu_y + c1) * (var_x + var_y + c2)
    return float(np.mean(num / den))
