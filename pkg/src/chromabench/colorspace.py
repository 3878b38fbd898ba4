"""sRGB / CIELAB / YUV conversions, grayscale extraction, luminance replacement.

All conversions are pure functions over immutable planar images: float64 in,
float64 out, no global state. sRGB means nonlinear display RGB in [0, 1].
CIELAB uses the D65 white point implied by the sRGB primaries. YUV is
full-range analog BT.601 computed directly on the nonlinear sRGB values,
which makes chroma scaling in YUV exactly invertible in closed form.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .errors import EmptyInput, InvalidArgument, InvalidColorSpace

__all__ = [
    "ColorSpace",
    "PlanarImage",
    "GrayImage",
    "srgb_to_lab",
    "lab_to_srgb",
    "srgb_to_yuv",
    "yuv_to_srgb",
    "to_grayscale",
    "luminance_replace",
    "resize_bilinear",
    "U_LIMIT",
    "V_LIMIT",
    "REPLACEMENT_SIZE",
]

Array = NDArray[np.float64]

# Luminance replacement renders both operands at this square size.
REPLACEMENT_SIZE = 512

# sRGB primaries -> XYZ under D65, 2 degree observer (IEC 61966-2-1).
_SRGB_TO_XYZ = np.array(
    [
        [0.4124564, 0.3575761, 0.1804375],
        [0.2126729, 0.7151522, 0.0721750],
        [0.0193339, 0.1191920, 0.9503041],
    ]
)
_XYZ_TO_SRGB = np.linalg.inv(_SRGB_TO_XYZ)

# White point taken as the matrix's own row sums rather than nominal D65
# tristimulus values: the gray axis then maps to a = b = 0 exactly and
# in-gamut roundtrips hold to float precision.
_WHITE = _SRGB_TO_XYZ.sum(axis=1)

# Full-range analog BT.601: luma weights plus the classical chroma scales.
_YUV_LUMA = np.array([0.299, 0.587, 0.114])
_U_SCALE = 0.492
_V_SCALE = 0.877

# Largest |U| / |V| reachable from in-gamut sRGB (blue / red corners).
U_LIMIT = float(_U_SCALE * (1.0 - _YUV_LUMA[2]))
V_LIMIT = float(_V_SCALE * (1.0 - _YUV_LUMA[0]))

# Channel values this far outside [0, 1] count as rounding dust, not gamut
# violations; they are clamped silently.
_GAMUT_TOL = 1e-12


class ColorSpace(enum.Enum):
    SRGB = "srgb"
    LINEAR_RGB = "linear-rgb"
    LAB = "lab"
    YUV = "yuv"


def _frozen_f64(data: np.ndarray) -> Array:
    arr = np.array(data, dtype=np.float64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class PlanarImage:
    """An H x W x 3 float64 image tagged with the color space of its channels."""

    space: ColorSpace
    data: Array

    def __post_init__(self) -> None:
        if not isinstance(self.space, ColorSpace):
            raise InvalidArgument(f"space must be a ColorSpace, got {self.space!r}")
        arr = _frozen_f64(self.data)
        if arr.ndim != 3 or arr.shape[2] != 3:
            raise InvalidArgument(f"image data must have shape (H, W, 3), got {arr.shape}")
        if arr.size and not np.isfinite(arr).all():
            raise InvalidArgument("image data must be finite")
        object.__setattr__(self, "data", arr)

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def is_empty(self) -> bool:
        return self.data.size == 0

    @classmethod
    def srgb(cls, data: np.ndarray) -> "PlanarImage":
        return cls(ColorSpace.SRGB, data)

    def validate(self) -> None:
        """Check the per-space channel range invariants; raise InvalidArgument on failure."""
        if self.is_empty:
            return
        tol = 1e-9
        if self.space in (ColorSpace.SRGB, ColorSpace.LINEAR_RGB):
            if self.data.min() < -tol or self.data.max() > 1.0 + tol:
                raise InvalidArgument(f"{self.space.value} channels must lie in [0, 1]")
        elif self.space == ColorSpace.YUV:
            y, u, v = self.data[..., 0], self.data[..., 1], self.data[..., 2]
            if y.min() < -tol or y.max() > 1.0 + tol:
                raise InvalidArgument("Y channel must lie in [0, 1]")
            if np.abs(u).max() > U_LIMIT + tol or np.abs(v).max() > V_LIMIT + tol:
                raise InvalidArgument("U/V channels exceed the sRGB-reachable range")
        elif self.space == ColorSpace.LAB:
            L = self.data[..., 0]
            if L.min() < -tol or L.max() > 100.0 + tol:
                raise InvalidArgument("L channel must lie in [0, 100]")


@dataclass(frozen=True)
class GrayImage:
    """An H x W luminance plane on the CIELAB L scale [0, 100]."""

    luminance: Array

    def __post_init__(self) -> None:
        arr = _frozen_f64(self.luminance)
        if arr.ndim != 2:
            raise InvalidArgument(f"luminance must be 2-D, got shape {arr.shape}")
        if arr.size:
            if not np.isfinite(arr).all():
                raise InvalidArgument("luminance must be finite")
            if arr.min() < -1e-9 or arr.max() > 100.0 + 1e-9:
                raise InvalidArgument("luminance must lie in [0, 100]")
        object.__setattr__(self, "luminance", arr)

    @property
    def height(self) -> int:
        return self.luminance.shape[0]

    @property
    def width(self) -> int:
        return self.luminance.shape[1]

    @property
    def is_empty(self) -> bool:
        return self.luminance.size == 0


def _require_space(img: PlanarImage, space: ColorSpace, op: str) -> None:
    if img.space is not space:
        raise InvalidColorSpace(f"{op} expects a {space.value} image, got {img.space.value}")


def _srgb_decode(c: Array) -> Array:
    """Nonlinear sRGB in [0, 1] -> linear light."""
    return np.where(c <= 0.04045, c / 12.92, ((c + 0.055) / 1.055) ** 2.4)


def _srgb_encode(c: Array) -> Array:
    """Linear light (clamped to >= 0 by the caller) -> nonlinear sRGB."""
    return np.where(c <= 0.0031308, 12.92 * c, 1.055 * c ** (1.0 / 2.4) - 0.055)


_LAB_DELTA = 6.0 / 29.0


def _lab_f(t: Array) -> Array:
    return np.where(t > _LAB_DELTA**3, np.cbrt(t), t / (3.0 * _LAB_DELTA**2) + 4.0 / 29.0)


def _lab_finv(t: Array) -> Array:
    return np.where(t > _LAB_DELTA, t * t * t, 3.0 * _LAB_DELTA**2 * (t - 4.0 / 29.0))


def _srgb_array_to_lab(rgb: Array) -> Array:
    xyz = (_srgb_decode(rgb) @ _SRGB_TO_XYZ.T) / _WHITE
    f = _lab_f(xyz)
    L = 116.0 * f[..., 1] - 16.0
    a = 500.0 * (f[..., 0] - f[..., 1])
    b = 200.0 * (f[..., 1] - f[..., 2])
    return np.stack([L, a, b], axis=-1)


def _lab_array_to_linear(lab: Array) -> Array:
    fy = (lab[..., 0] + 16.0) / 116.0
    fx = fy + lab[..., 1] / 500.0
    fz = fy - lab[..., 2] / 200.0
    xyz = np.stack([_lab_finv(fx), _lab_finv(fy), _lab_finv(fz)], axis=-1) * _WHITE
    return xyz @ _XYZ_TO_SRGB.T


def _encode_clipped(linear: Array) -> Array:
    return np.clip(_srgb_encode(np.clip(linear, 0.0, None)), 0.0, 1.0)


def srgb_to_lab(img: PlanarImage) -> PlanarImage:
    """Convert a nonlinear sRGB image to CIELAB (D65)."""
    _require_space(img, ColorSpace.SRGB, "srgb_to_lab")
    return PlanarImage(ColorSpace.LAB, _srgb_array_to_lab(img.data))


def lab_to_srgb(img: PlanarImage) -> PlanarImage:
    """Convert CIELAB back to sRGB; out-of-gamut results are clipped per channel."""
    _require_space(img, ColorSpace.LAB, "lab_to_srgb")
    return PlanarImage(ColorSpace.SRGB, _encode_clipped(_lab_array_to_linear(img.data)))


def _srgb_array_to_yuv(rgb: Array) -> Array:
    y = rgb @ _YUV_LUMA
    u = _U_SCALE * (rgb[..., 2] - y)
    v = _V_SCALE * (rgb[..., 0] - y)
    return np.stack([y, u, v], axis=-1)


def _yuv_array_to_srgb(yuv: Array) -> Array:
    y, u, v = yuv[..., 0], yuv[..., 1], yuv[..., 2]
    r = y + v / _V_SCALE
    b = y + u / _U_SCALE
    g = (y - _YUV_LUMA[0] * r - _YUV_LUMA[2] * b) / _YUV_LUMA[1]
    return np.stack([r, g, b], axis=-1)


def srgb_to_yuv(img: PlanarImage) -> PlanarImage:
    """Convert nonlinear sRGB to full-range analog BT.601 YUV."""
    _require_space(img, ColorSpace.SRGB, "srgb_to_yuv")
    return PlanarImage(ColorSpace.YUV, _srgb_array_to_yuv(img.data))


def yuv_to_srgb(img: PlanarImage, clip: bool = True) -> tuple[PlanarImage, float]:
    """Invert srgb_to_yuv.

    Returns the sRGB image together with the fraction of pixels whose
    reconstruction fell outside [0, 1] in at least one channel (beyond
    rounding dust). With clip=True those channels are clamped; with
    clip=False the values pass through unchanged, making the conversion
    an exact algebraic inverse.
    """
    _require_space(img, ColorSpace.YUV, "yuv_to_srgb")
    rgb = _yuv_array_to_srgb(img.data)
    if rgb.size:
        out = (rgb < -_GAMUT_TOL) | (rgb > 1.0 + _GAMUT_TOL)
        fraction = float(out.any(axis=-1).mean())
    else:
        fraction = 0.0
    if clip:
        rgb = np.clip(rgb, 0.0, 1.0)
    return PlanarImage(ColorSpace.SRGB, rgb), fraction


def to_grayscale(img: PlanarImage) -> GrayImage:
    """Extract the CIELAB L channel as a grayscale plane."""
    _require_space(img, ColorSpace.SRGB, "to_grayscale")
    L = _srgb_array_to_lab(img.data)[..., 0]
    return GrayImage(np.clip(L, 0.0, 100.0))


def resize_bilinear(data: np.ndarray, height: int, width: int) -> np.ndarray:
    """Bilinearly resample a 2-D or 3-D array to (height, width).

    Samples at half-pixel centers with edge replication, so constant inputs
    stay constant and in-range inputs stay in range. A same-size call
    returns an unmodified copy.
    """
    if height < 1 or width < 1:
        raise InvalidArgument("target size must be at least 1 x 1")
    src_h, src_w = data.shape[0], data.shape[1]
    if src_h < 1 or src_w < 1:
        raise EmptyInput("cannot resize an empty array")
    if src_h == height and src_w == width:
        return np.array(data, dtype=np.float64)

    ys = (np.arange(height, dtype=np.float64) + 0.5) * (src_h / height) - 0.5
    xs = (np.arange(width, dtype=np.float64) + 0.5) * (src_w / width) - 0.5
    y0f = np.floor(ys)
    x0f = np.floor(xs)
    ty = ys - y0f
    tx = xs - x0f
    y0 = np.clip(y0f.astype(np.int64), 0, src_h - 1)
    y1 = np.clip(y0f.astype(np.int64) + 1, 0, src_h - 1)
    x0 = np.clip(x0f.astype(np.int64), 0, src_w - 1)
    x1 = np.clip(x0f.astype(np.int64) + 1, 0, src_w - 1)

    trailing = (1,) * (data.ndim - 2)
    wy = ty.reshape(-1, 1, *trailing)
    wx = tx.reshape(1, -1, *trailing)

    arr = np.asarray(data, dtype=np.float64)
    rows0 = arr[y0]
    rows1 = arr[y1]
    top = rows0[:, x0] * (1.0 - wx) + rows0[:, x1] * wx
    bottom = rows1[:, x0] * (1.0 - wx) + rows1[:, x1] * wx
    return top * (1.0 - wy) + bottom * wy


def _chroma_gamut_scale(L: Array, a: Array, b: Array, iters: int = 24) -> Array:
    """Per-pixel largest s in [0, 1] such that (L, s*a, s*b) is inside the sRGB gamut.

    The L channel is never touched, so gamut mapping with this scale
    preserves luminance exactly. Pixels already in gamut keep s = 1;
    only the others are bisected, always keeping the in-gamut side, so
    the result never needs clipping beyond rounding dust.
    """
    shape = L.shape
    fy = ((L + 16.0) / 116.0).ravel()
    ka = (a / 500.0).ravel()
    kb = (b / 200.0).ravel()

    # Linear RGB decomposes into one term per XYZ column; only X and Z
    # depend on s, so each bisection step costs two finv evaluations.
    col_x = _XYZ_TO_SRGB[:, 0] * _WHITE[0]
    col_y = _XYZ_TO_SRGB[:, 1] * _WHITE[1]
    col_z = _XYZ_TO_SRGB[:, 2] * _WHITE[2]
    base = _lab_finv(fy)[:, None] * col_y

    def in_gamut(fy_: Array, ka_: Array, kb_: Array, base_: Array, s: Array) -> Array:
        lin = (
            base_
            + _lab_finv(fy_ + ka_ * s)[:, None] * col_x
            + _lab_finv(fy_ - kb_ * s)[:, None] * col_z
        )
        return ((lin > -_GAMUT_TOL) & (lin < 1.0 + _GAMUT_TOL)).all(axis=1)

    ok = in_gamut(fy, ka, kb, base, np.ones_like(fy))
    scale = np.where(ok, 1.0, 0.0)
    sel = np.flatnonzero(~ok)
    if sel.size:
        fy_s, ka_s, kb_s, base_s = fy[sel], ka[sel], kb[sel], base[sel]
        lo = np.zeros(sel.size)
        hi = np.ones(sel.size)
        for _ in range(iters):
            mid = 0.5 * (lo + hi)
            good = in_gamut(fy_s, ka_s, kb_s, base_s, mid)
            lo = np.where(good, mid, lo)
            hi = np.where(good, hi, mid)
        scale[sel] = lo
    return scale.reshape(shape)


def luminance_replace(colorized: PlanarImage, gray: GrayImage) -> PlanarImage:
    """Replace the luminance of a colorized image with a reference gray plane.

    Both operands are bilinearly resized to REPLACEMENT_SIZE squared; the
    colorized image's CIELAB L channel is replaced by the resized gray
    plane and the result converted back to sRGB. Chroma that the new
    luminance pushes out of gamut is scaled down at constant L, so the
    output's L channel matches the resized gray plane to well below
    quantization error.
    """
    _require_space(colorized, ColorSpace.SRGB, "luminance_replace")
    if colorized.is_empty:
        raise EmptyInput("colorized image is empty")
    if gray.is_empty:
        raise EmptyInput("gray image is empty")

    rgb = resize_bilinear(colorized.data, REPLACEMENT_SIZE, REPLACEMENT_SIZE)
    lab = _srgb_array_to_lab(rgb)
    L = resize_bilinear(gray.luminance, REPLACEMENT_SIZE, REPLACEMENT_SIZE)
    a = lab[..., 1]
    b = lab[..., 2]

    s = _chroma_gamut_scale(L, a, b)
    out_lab = np.stack([L, a * s, b * s], axis=-1)
    return PlanarImage(ColorSpace.SRGB, _encode_clipped(_lab_array_to_linear(out_lab)))
