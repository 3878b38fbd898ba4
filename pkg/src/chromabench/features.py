"""Feature containers, the CFS v1 file format, and the pixel-statistics extractor.

CFS v1 layout (little-endian): 4 magic bytes "CFS1", a u8 format version,
u32 row count N, u32 dimension D, then N*D float32 values in row-major
order. A JSON sidecar at <file>.manifest.json records the extractor name,
its version string, and the row ids in row order. Rows are always stored
in sorted-id order, so identical inputs produce identical bytes.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Protocol

import numpy as np
from numpy.typing import NDArray

from .colorspace import ColorSpace, PlanarImage, resize_bilinear, srgb_to_lab
from .errors import (
    BadMagic,
    CorruptPayload,
    EmptyInput,
    InvalidColorSpace,
    InvalidFeatureSet,
    ManifestMismatch,
    VersionUnsupported,
)

__all__ = [
    "FeatureSet",
    "FeatureExtractor",
    "PixelStatsExtractor",
    "pixel_stats_extractor",
    "save_cfs",
    "load_cfs",
    "manifest_path",
]

_MAGIC = b"CFS1"
_FORMAT_VERSION = 1
_HEADER = struct.Struct("<4sBII")


class FeatureExtractor(Protocol):
    """Anything that maps an sRGB image to a fixed-length feature vector.

    Extraction must be deterministic: the same pixels always produce the
    same vector.
    """

    name: str
    version: str
    dim: int

    def extract(self, img: PlanarImage) -> NDArray[np.float64]: ...


@dataclass(frozen=True)
class FeatureSet:
    """N x D float32 feature rows keyed by sorted, unique string ids."""

    data: NDArray[np.float32]
    ids: tuple[str, ...]
    extractor: str
    version: str

    def __post_init__(self) -> None:
        arr = np.array(self.data, dtype=np.float32)
        arr.setflags(write=False)
        if arr.ndim != 2:
            raise InvalidFeatureSet(f"feature data must be 2-D, got shape {arr.shape}")
        n, d = arr.shape
        if n == 0 or d == 0:
            raise InvalidFeatureSet("feature set must have at least one row and one column")
        if not np.isfinite(arr).all():
            raise InvalidFeatureSet("feature values must be finite")
        ids = tuple(str(i) for i in self.ids)
        if len(ids) != n:
            raise InvalidFeatureSet(f"{len(ids)} ids for {n} rows")
        if len(set(ids)) != len(ids):
            raise InvalidFeatureSet("ids must be unique")
        if list(ids) != sorted(ids):
            raise InvalidFeatureSet("ids must be in sorted order")
        object.__setattr__(self, "data", arr)
        object.__setattr__(self, "ids", ids)

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def dim(self) -> int:
        return self.data.shape[1]

    @classmethod
    def from_rows(
        cls,
        rows: Iterable[tuple[str, np.ndarray]],
        extractor: str,
        version: str,
    ) -> "FeatureSet":
        """Build a set from (id, vector) pairs, sorting rows by id."""
        items = sorted(((str(i), np.asarray(v)) for i, v in rows), key=lambda kv: kv[0])
        if not items:
            raise InvalidFeatureSet("feature set must have at least one row and one column")
        data = np.stack([v for _, v in items]).astype(np.float32)
        return cls(data=data, ids=tuple(i for i, _ in items), extractor=extractor, version=version)


def manifest_path(path: str | Path) -> Path:
    return Path(str(path) + ".manifest.json")


def save_cfs(features: FeatureSet, path: str | Path) -> None:
    """Write a feature set as a CFS v1 file plus its JSON sidecar manifest."""
    path = Path(path)
    header = _HEADER.pack(_MAGIC, _FORMAT_VERSION, features.n, features.dim)
    payload = np.ascontiguousarray(features.data, dtype="<f4").tobytes()
    path.write_bytes(header + payload)
    manifest = {
        "extractor": features.extractor,
        "version": features.version,
        "ids": list(features.ids),
    }
    manifest_path(path).write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")


def load_cfs(path: str | Path) -> FeatureSet:
    """Read and validate a CFS v1 file together with its sidecar manifest."""
    path = Path(path)
    raw = path.read_bytes()
    if len(raw) < _HEADER.size:
        raise CorruptPayload(f"{path}: file shorter than the fixed header")
    magic, version, n, d = _HEADER.unpack_from(raw)
    if magic != _MAGIC:
        raise BadMagic(f"{path}: expected magic {_MAGIC!r}, found {magic!r}")
    if version != _FORMAT_VERSION:
        raise VersionUnsupported(f"{path}: format version {version} is not supported")
    if n == 0 or d == 0:
        raise CorruptPayload(f"{path}: header declares an empty feature matrix")
    expected = _HEADER.size + 4 * n * d
    if len(raw) != expected:
        raise CorruptPayload(f"{path}: expected {expected} bytes, found {len(raw)}")
    data = np.frombuffer(raw, dtype="<f4", offset=_HEADER.size).reshape(n, d)
    if not np.isfinite(data).all():
        raise CorruptPayload(f"{path}: payload contains non-finite values")

    mpath = manifest_path(path)
    if not mpath.is_file():
        raise ManifestMismatch(f"{path}: missing sidecar manifest {mpath.name}")
    try:
        manifest = json.loads(mpath.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ManifestMismatch(f"{mpath}: invalid JSON ({e})") from e
    if not isinstance(manifest, dict):
        raise ManifestMismatch(f"{mpath}: manifest must be a JSON object")
    missing = {"extractor", "version", "ids"} - manifest.keys()
    if missing:
        raise ManifestMismatch(f"{mpath}: missing keys {sorted(missing)}")
    ids = manifest["ids"]
    if not isinstance(ids, list) or not all(isinstance(i, str) for i in ids):
        raise ManifestMismatch(f"{mpath}: ids must be a list of strings")
    if len(ids) != n:
        raise ManifestMismatch(f"{mpath}: {len(ids)} ids for {n} rows")
    if len(set(ids)) != len(ids) or ids != sorted(ids):
        raise ManifestMismatch(f"{mpath}: ids must be unique and sorted")
    return FeatureSet(
        data=data,
        ids=tuple(ids),
        extractor=str(manifest["extractor"]),
        version=str(manifest["version"]),
    )


# Pixel-statistics extractor layout: channels are (R, G, B, L, a, b) on a
# 64 x 64 bilinear resample. The vector is 6 channel means, 6 population
# stds, then per channel a 6-bin histogram averaged over a 4 x 4 grid of
# cells: 12 + 36 = 48 values.
_PS_SIZE = 64
_PS_GRID = 4
_PS_BINS = 6
_PS_RANGES = (
    (0.0, 1.0),
    (0.0, 1.0),
    (0.0, 1.0),
    (0.0, 100.0),
    (-128.0, 128.0),
    (-128.0, 128.0),
)


class PixelStatsExtractor:
    """Deterministic 48-dimensional pixel-statistics features.

    Cheap, dependency-free, and sensitive to global color layout:
    channel moments plus coarse spatial histograms over RGB and CIELAB.
    """

    name = "pixel-stats"
    version = "1"
    dim = 2 * 6 + _PS_BINS * 6

    def extract(self, img: PlanarImage) -> NDArray[np.float64]:
        if img.space is not ColorSpace.SRGB:
            raise InvalidColorSpace(f"pixel stats expect an srgb image, got {img.space.value}")
        if img.is_empty:
            raise EmptyInput("cannot extract features from an empty image")
        rgb = resize_bilinear(img.data, _PS_SIZE, _PS_SIZE)
        lab = srgb_to_lab(PlanarImage(ColorSpace.SRGB, rgb)).data
        channels = [rgb[..., i] for i in range(3)] + [lab[..., i] for i in range(3)]

        means = [float(c.mean()) for c in channels]
        stds = [float(c.std()) for c in channels]

        cell = _PS_SIZE // _PS_GRID
        hists: list[np.ndarray] = []
        for c, (lo, hi) in zip(channels, _PS_RANGES):
            acc = np.zeros(_PS_BINS)
            for gy in range(_PS_GRID):
                for gx in range(_PS_GRID):
                    block = c[gy * cell : (gy + 1) * cell, gx * cell : (gx + 1) * cell]
                    counts, _ = np.histogram(block, bins=_PS_BINS, range=(lo, hi))
                    acc += counts / block.size
            hists.append(acc / (_PS_GRID * _PS_GRID))
        return np.concatenate([means, stds, *hists])


_DEFAULT_PIXEL_STATS = PixelStatsExtractor()


def pixel_stats_extractor(img: PlanarImage) -> NDArray[np.float64]:
    """Extract the 48-dimensional pixel-statistics vector from an sRGB image."""
    return _DEFAULT_PIXEL_STATS.extract(img)
