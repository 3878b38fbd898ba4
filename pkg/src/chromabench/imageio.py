"""The 8-bit file boundary: decode images to float sRGB and encode them back.

Decoding maps 8-bit values to k/255 in float64; encoding rounds half to even.
Embedded ICC profiles are intentionally ignored: bytes in, the same numbers
out on every platform.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image

from .colorspace import ColorSpace, PlanarImage
from .errors import InvalidColorSpace

__all__ = ["IMAGE_EXTENSIONS", "load_image", "save_image", "list_images"]

IMAGE_EXTENSIONS = {".png", ".jpg", ".jpeg"}


def load_image(path: str | Path) -> PlanarImage:
    """Decode a PNG or JPEG file into a float64 sRGB image."""
    with Image.open(path) as im:
        arr = np.asarray(im.convert("RGB"), dtype=np.float64) / 255.0
    return PlanarImage(ColorSpace.SRGB, arr)


def save_image(img: PlanarImage, path: str | Path) -> None:
    """Encode an sRGB image to 8 bits (round half to even) and write it."""
    if img.space is not ColorSpace.SRGB:
        raise InvalidColorSpace(f"save_image expects an srgb image, got {img.space.value}")
    q = np.rint(np.clip(img.data, 0.0, 1.0) * 255.0).astype(np.uint8)
    Image.fromarray(q, "RGB").save(path)


def list_images(directory: str | Path) -> list[Path]:
    """All PNG/JPEG files directly inside a directory, sorted by name."""
    d = Path(directory)
    if not d.is_dir():
        raise NotADirectoryError(f"not a directory: {d}")
    return sorted(p for p in d.iterdir() if p.is_file() and p.suffix.lower() in IMAGE_EXTENSIONS)
