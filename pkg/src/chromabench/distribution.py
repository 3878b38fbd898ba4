"""Set-level distribution metrics: Gaussian moments, Fréchet distance, FID,
chroma scaling, and the chroma-corrected (hue-invariant) FID.

The hue-invariant variant first finds the chroma scale that matches the
predicted set's mean colorfulness to the ground truth's, applies it to every
predicted image, and only then measures FID. Saturation-only offsets are
thereby discounted while structural color errors still count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np
from numpy.typing import NDArray

from .colorspace import ColorSpace, PlanarImage, srgb_to_yuv, yuv_to_srgb
from .errors import (
    EmptyInput,
    InsufficientSamples,
    InvalidAlpha,
    InvalidArgument,
    InvalidColorSpace,
    NotPSD,
    ShapeMismatch,
)
from .metrics import CFSummary, colorfulness

if TYPE_CHECKING:
    from .features import FeatureExtractor, FeatureSet

__all__ = [
    "GaussianStats",
    "AlphaSolution",
    "fit_gaussian",
    "sqrtm_psd",
    "frechet_distance",
    "fid",
    "chroma_scale",
    "optimize_alpha",
    "hue_invariant_fid",
    "DEFAULT_ALPHA_BOUNDS",
    "DEFAULT_ALPHA_TOL",
]

Array = NDArray[np.float64]

DEFAULT_ALPHA_BOUNDS = (0.05, 4.0)
DEFAULT_ALPHA_TOL = 1e-3

# Covariances whose smallest eigenvalue falls below this are considered
# near-singular; a small ridge is added inside the square-root term only.
_SINGULAR_EIG = 1e-10
_RIDGE = 1e-6

_SYM_TOL = 1e-8


@dataclass(frozen=True)
class GaussianStats:
    """Mean, covariance, and sample count of a fitted Gaussian."""

    mean: Array
    cov: Array
    n: int

    def __post_init__(self) -> None:
        mean = np.array(self.mean, dtype=np.float64)
        cov = np.array(self.cov, dtype=np.float64)
        if mean.ndim != 1:
            raise InvalidArgument(f"mean must be 1-D, got shape {mean.shape}")
        if cov.shape != (mean.size, mean.size):
            raise ShapeMismatch(f"cov shape {cov.shape} does not match dim {mean.size}")
        if not (np.isfinite(mean).all() and np.isfinite(cov).all()):
            raise InvalidArgument("Gaussian moments must be finite")
        if np.abs(cov - cov.T).max(initial=0.0) > 1e-10:
            raise InvalidArgument("covariance must be symmetric within 1e-10")
        if self.n < 2:
            raise InsufficientSamples(f"need at least 2 samples, got {self.n}")
        mean.setflags(write=False)
        cov.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def dim(self) -> int:
        return int(self.mean.size)


def fit_gaussian(features: "FeatureSet | np.ndarray") -> GaussianStats:
    """Sample mean and unbiased covariance (ddof = 1) of feature rows.

    Accepts a FeatureSet or a plain N x D array. Rows enter in container
    order, which FeatureSet fixes to sorted ids, so the moments do not
    depend on traversal order.
    """
    data = getattr(features, "data", features)
    x = np.asarray(data, dtype=np.float64)
    if x.ndim != 2:
        raise InvalidArgument(f"features must be 2-D, got shape {x.shape}")
    n = x.shape[0]
    if n < 2:
        raise InsufficientSamples(f"need at least 2 samples, got {n}")
    mean = x.mean(axis=0)
    cov = np.atleast_2d(np.cov(x, rowvar=False))
    cov = 0.5 * (cov + cov.T)
    return GaussianStats(mean=mean, cov=cov, n=n)


def sqrtm_psd(a: np.ndarray) -> Array:
    """Symmetric PSD square root via eigendecomposition.

    Eigenvalues barely below zero (scaled rounding noise) are clamped to
    zero; materially non-symmetric or indefinite inputs raise NotPSD.
    """
    m = np.asarray(a, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeMismatch(f"expected a square matrix, got shape {m.shape}")
    if not np.isfinite(m).all():
        raise InvalidArgument("matrix must be finite")
    scale = 1.0 + float(np.abs(m).max(initial=0.0))
    if np.abs(m - m.T).max(initial=0.0) > _SYM_TOL * scale:
        raise NotPSD("matrix is not symmetric")
    w, v = np.linalg.eigh(0.5 * (m + m.T))
    if w.size and w[0] < -_SYM_TOL * scale:
        raise NotPSD(f"matrix has negative eigenvalue {w[0]:.3e}")
    w = np.clip(w, 0.0, None)
    root = (v * np.sqrt(w)) @ v.T
    return 0.5 * (root + root.T)


def frechet_distance(g1: GaussianStats, g2: GaussianStats) -> float:
    """Squared Fréchet distance between two Gaussians.

    ||mu1 - mu2||^2 + tr(C1 + C2 - 2 (C1 C2)^{1/2}), with the cross term
    evaluated as sqrtm(sqrt(C1) C2 sqrt(C1)) for symmetry. If either
    covariance is near-singular, a 1e-6 ridge is added to both inside the
    square-root term only. The result is clamped at zero.
    """
    if g1.dim != g2.dim:
        raise ShapeMismatch(f"dims differ: {g1.dim} vs {g2.dim}")
    diff = g1.mean - g2.mean
    mean_term = float(diff @ diff)

    c1, c2 = g1.cov, g2.cov
    min_eig = min(
        float(np.linalg.eigvalsh(c1)[0]),
        float(np.linalg.eigvalsh(c2)[0]),
    )
    if min_eig < _SINGULAR_EIG:
        ridge = _RIDGE * np.eye(g1.dim)
        c1 = c1 + ridge
        c2 = c2 + ridge
    root1 = sqrtm_psd(c1)
    inner = root1 @ c2 @ root1
    cross = sqrtm_psd(0.5 * (inner + inner.T))
    value = mean_term + float(np.trace(g1.cov) + np.trace(g2.cov) - 2.0 * np.trace(cross))
    return max(value, 0.0)


def fid(gt_features: "FeatureSet | np.ndarray", pred_features: "FeatureSet | np.ndarray") -> float:
    """Fréchet distance between Gaussians fitted to two feature sets."""
    g1 = fit_gaussian(gt_features)
    g2 = fit_gaussian(pred_features)
    return frechet_distance(g1, g2)


def chroma_scale(img: PlanarImage, alpha: float) -> tuple[PlanarImage, float]:
    """Scale the BT.601 chroma of an sRGB image by alpha.

    Returns the scaled image and the fraction of pixels clamped on the way
    back to sRGB. alpha = 1.0 returns the input data unchanged, bit for bit.
    """
    if not (isinstance(alpha, (int, float)) and math.isfinite(alpha)) or alpha <= 0.0:
        raise InvalidAlpha(f"alpha must be a positive finite number, got {alpha!r}")
    if img.space is not ColorSpace.SRGB:
        raise InvalidColorSpace(f"chroma_scale expects an srgb image, got {img.space.value}")
    if alpha == 1.0:
        return PlanarImage(ColorSpace.SRGB, img.data), 0.0
    yuv = srgb_to_yuv(img).data.copy()
    yuv[..., 1] *= alpha
    yuv[..., 2] *= alpha
    return yuv_to_srgb(PlanarImage(ColorSpace.YUV, yuv), clip=True)


@dataclass(frozen=True)
class AlphaSolution:
    """Result of the chroma-correction search."""

    alpha_star: float
    residual: float
    iterations: int
    clipped_fraction: float

    def __post_init__(self) -> None:
        if self.alpha_star <= 0.0 or not math.isfinite(self.alpha_star):
            raise InvalidAlpha(f"alpha_star must be positive, got {self.alpha_star}")
        if self.residual < 0.0 or not math.isfinite(self.residual):
            raise InvalidArgument("residual must be finite and non-negative")
        if not 0.0 <= self.clipped_fraction <= 1.0:
            raise InvalidArgument("clipped_fraction must lie in [0, 1]")
        if self.iterations < 0:
            raise InvalidArgument("iterations must be non-negative")


def _set_mean_cf(images: Sequence[PlanarImage], alpha: float) -> tuple[float, float]:
    """Mean colorfulness of the set after chroma scaling, plus the
    pixel-weighted clipped fraction."""
    total_cf = 0.0
    clipped = 0.0
    pixels = 0
    for img in images:
        scaled, frac = chroma_scale(img, alpha)
        total_cf += colorfulness(scaled)
        count = scaled.height * scaled.width
        clipped += frac * count
        pixels += count
    return total_cf / len(images), (clipped / pixels if pixels else 0.0)


def optimize_alpha(
    gt_cf: CFSummary,
    pred_images: Sequence[PlanarImage],
    bounds: tuple[float, float] = DEFAULT_ALPHA_BOUNDS,
    tol: float = DEFAULT_ALPHA_TOL,
) -> AlphaSolution:
    """Bisect for the chroma scale that matches mean colorfulness to gt_cf.

    The objective g(a) = mean CF of the scaled predictions minus
    gt_cf.mean_cf is non-decreasing in a, so bisection applies. If the
    bracket shows no sign change, the bound with the smaller |g| is
    returned with that residual. tol bounds the bracket width on alpha.
    """
    lo, hi = float(bounds[0]), float(bounds[1])
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo <= 0.0 or lo >= hi:
        raise InvalidAlpha(f"bounds must satisfy 0 < lo < hi, got {bounds!r}")
    if tol <= 0.0:
        raise InvalidArgument(f"tol must be positive, got {tol}")
    if len(gt_cf) == 0:
        raise EmptyInput("ground-truth summary is empty")
    if len(pred_images) == 0:
        raise EmptyInput("no predicted images to correct")

    target = gt_cf.mean_cf
    g_lo, _ = _set_mean_cf(pred_images, lo)
    g_hi, _ = _set_mean_cf(pred_images, hi)
    g_lo -= target
    g_hi -= target
    evals = 2

    if g_lo == 0.0:
        lo_sol, hi_sol = lo, lo
    elif g_hi == 0.0:
        lo_sol, hi_sol = hi, hi
    elif (g_lo > 0.0) == (g_hi > 0.0):
        # No bracketed root: the feasible range cannot reach the target.
        alpha = lo if abs(g_lo) <= abs(g_hi) else hi
        residual = min(abs(g_lo), abs(g_hi))
        _, frac = _set_mean_cf(pred_images, alpha)
        return AlphaSolution(
            alpha_star=alpha, residual=residual, iterations=evals, clipped_fraction=frac
        )
    else:
        lo_sol, hi_sol = lo, hi
        while hi_sol - lo_sol > tol:
            mid = 0.5 * (lo_sol + hi_sol)
            g_mid, _ = _set_mean_cf(pred_images, mid)
            g_mid -= target
            evals += 1
            if g_mid == 0.0:
                lo_sol, hi_sol = mid, mid
                break
            if (g_mid > 0.0) == (g_lo > 0.0):
                lo_sol = mid
            else:
                hi_sol = mid

    alpha = 0.5 * (lo_sol + hi_sol)
    final_cf, frac = _set_mean_cf(pred_images, alpha)
    evals += 1
    return AlphaSolution(
        alpha_star=alpha,
        residual=abs(final_cf - target),
        iterations=evals,
        clipped_fraction=frac,
    )


def hue_invariant_fid(
    gt_images: Sequence[PlanarImage],
    pred_images: Sequence[PlanarImage],
    extractor: "FeatureExtractor",
    bounds: tuple[float, float] = DEFAULT_ALPHA_BOUNDS,
    tol: float = DEFAULT_ALPHA_TOL,
) -> tuple[float, AlphaSolution]:
    """FID after chroma-correcting the predicted set.

    Finds alpha* that matches the predictions' mean colorfulness to the
    ground truth's, rescales every prediction by it, extracts features
    from both sets with the given extractor, and returns the FID together
    with the correction diagnostics.
    """
    if len(gt_images) == 0 or len(pred_images) == 0:
        raise EmptyInput("hue_invariant_fid needs non-empty image sets")
    gt_cf = CFSummary.from_pairs(
        (f"{i:06d}", colorfulness(img)) for i, img in enumerate(gt_images)
    )
    solution = optimize_alpha(gt_cf, pred_images, bounds=bounds, tol=tol)
    corrected = [chroma_scale(img, solution.alpha_star)[0] for img in pred_images]
    gt_feats = np.stack([extractor.extract(img) for img in gt_images])
    pred_feats = np.stack([extractor.extract(img) for img in corrected])
    return fid(gt_feats, pred_feats), solution
