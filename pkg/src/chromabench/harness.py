"""Benchmark orchestration: config, file pairing, caption cleanup, synthetic
sets, the saturation sweep, and the end-to-end metric run.

run_benchmark is a pure function of its config and the bytes of the files
the config points at: no timestamps, no environment lookups, and thread
counts change wall time only, never values.
"""

from __future__ import annotations

import enum
import json
import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Mapping, Sequence, TypeVar

import numpy as np

from .colorspace import (
    PlanarImage,
    luminance_replace,
    resize_bilinear,
    to_grayscale,
    yuv_to_srgb,
    ColorSpace,
)
from .distribution import (
    DEFAULT_ALPHA_BOUNDS,
    AlphaSolution,
    GaussianStats,
    chroma_scale,
    fit_gaussian,
    frechet_distance,
    optimize_alpha,
)
from .errors import (
    ChromabenchError,
    EmptyInput,
    InsufficientSamples,
    InvalidAlpha,
    InvalidArgument,
    NoPairs,
    PairingMismatch,
)
from .features import FeatureSet, PixelStatsExtractor, load_cfs
from .imageio import list_images, load_image, save_image
from .metrics import (
    CFSummary,
    Embedding,
    EmbeddingKind,
    clip_score,
    colorfulness,
    psnr,
    ssim,
)

__all__ = [
    "Metric",
    "METRIC_ORDER",
    "parse_metric",
    "ExtractorMode",
    "OutputFormat",
    "MethodSpec",
    "EvalConfig",
    "MethodRow",
    "MetricReport",
    "PairingResult",
    "SynthMode",
    "SweepPoint",
    "ingest_pairs",
    "clean_caption",
    "synth_set",
    "saturation_sweep",
    "run_benchmark",
]

T = TypeVar("T")
U = TypeVar("U")


class Metric(enum.Enum):
    """Report columns, in canonical order."""

    FID = "FID"
    HI_FID = "HI-FID"
    CF = "CF"
    DELTA_CF = "ΔCF"
    CLIP_SCORE = "CLIP Score"
    PSNR = "PSNR"
    SSIM = "SSIM"


METRIC_ORDER = (
    Metric.FID,
    Metric.HI_FID,
    Metric.CF,
    Metric.DELTA_CF,
    Metric.CLIP_SCORE,
    Metric.PSNR,
    Metric.SSIM,
)

_PAIRED_METRICS = {Metric.PSNR, Metric.SSIM}

_METRIC_ALIASES = {
    "FID": Metric.FID,
    "HI-FID": Metric.HI_FID,
    "HI_FID": Metric.HI_FID,
    "HIFID": Metric.HI_FID,
    "CF": Metric.CF,
    "COLORFULNESS": Metric.CF,
    "ΔCF": Metric.DELTA_CF,
    "DELTA_CF": Metric.DELTA_CF,
    "DELTA-CF": Metric.DELTA_CF,
    "DELTACF": Metric.DELTA_CF,
    "CLIP SCORE": Metric.CLIP_SCORE,
    "CLIP_SCORE": Metric.CLIP_SCORE,
    "CLIP-SCORE": Metric.CLIP_SCORE,
    "CLIPSCORE": Metric.CLIP_SCORE,
    "PSNR": Metric.PSNR,
    "SSIM": Metric.SSIM,
}


def parse_metric(name: str) -> Metric:
    key = name.strip().upper()
    if key not in _METRIC_ALIASES:
        raise InvalidArgument(f"unknown metric {name!r}")
    return _METRIC_ALIASES[key]


class ExtractorMode(enum.Enum):
    PIXEL_STATS = "pixel-stats"
    EXTERNAL_CFS = "external-cfs"


class OutputFormat(enum.Enum):
    CSV = "csv"
    MARKDOWN = "markdown"


@dataclass(frozen=True)
class MethodSpec:
    """One method under evaluation: a prediction directory plus optional
    externally produced feature files."""

    name: str
    pred_dir: Path
    pred_cfs: Path | None = None
    corrected_pred_cfs: Path | None = None
    image_embeddings_cfs: Path | None = None


@dataclass(frozen=True)
class EvalConfig:
    """Everything run_benchmark needs; validated before the run starts."""

    gt_dir: Path
    methods: tuple[MethodSpec, ...]
    metrics: tuple[Metric, ...]
    dataset_name: str = "dataset"
    extractor: ExtractorMode = ExtractorMode.PIXEL_STATS
    alpha_bounds: tuple[float, float] = DEFAULT_ALPHA_BOUNDS
    # Tighter than the optimize_alpha default so that identity runs drive
    # the hue-invariant FID to numerical zero.
    alpha_tol: float = 1e-6
    gt_cfs: Path | None = None
    text_embeddings_cfs: Path | None = None
    prompts_file: Path | None = None
    output_path: Path | None = None
    output_format: OutputFormat = OutputFormat.CSV
    strict: bool = False
    luminance_replace: bool = False
    threads: int = 1

    def validate(self) -> None:
        if not self.methods:
            raise InvalidArgument("config needs at least one method")
        names = [m.name for m in self.methods]
        if len(set(names)) != len(names) or any(not n for n in names):
            raise InvalidArgument("method names must be unique and non-empty")
        if not self.metrics:
            raise InvalidArgument("config needs at least one metric")
        if len(set(self.metrics)) != len(self.metrics):
            raise InvalidArgument("metrics must not repeat")
        if self.threads < 1:
            raise InvalidArgument(f"threads must be >= 1, got {self.threads}")
        lo, hi = self.alpha_bounds
        if not (0.0 < lo < hi) or not (math.isfinite(lo) and math.isfinite(hi)):
            raise InvalidAlpha(f"alpha_bounds must satisfy 0 < lo < hi, got {self.alpha_bounds}")
        if self.alpha_tol <= 0.0:
            raise InvalidArgument(f"alpha_tol must be positive, got {self.alpha_tol}")
        wants = set(self.metrics)
        if self.extractor is ExtractorMode.EXTERNAL_CFS:
            if Metric.FID in wants or Metric.HI_FID in wants:
                if self.gt_cfs is None:
                    raise InvalidArgument("external-cfs FID needs gt_cfs")
                for m in self.methods:
                    if Metric.FID in wants and m.pred_cfs is None:
                        raise InvalidArgument(f"method {m.name!r} needs pred_cfs for FID")
                    if Metric.HI_FID in wants and m.corrected_pred_cfs is None:
                        raise InvalidArgument(
                            f"method {m.name!r} needs corrected_pred_cfs for HI-FID"
                        )
        if Metric.CLIP_SCORE in wants:
            if self.text_embeddings_cfs is None:
                raise InvalidArgument("CLIP Score needs text_embeddings_cfs")
            for m in self.methods:
                if m.image_embeddings_cfs is None:
                    raise InvalidArgument(
                        f"method {m.name!r} needs image_embeddings_cfs for CLIP Score"
                    )

    @classmethod
    def from_dict(cls, raw: Mapping, base_dir: str | Path = ".") -> "EvalConfig":
        """Build a config from parsed JSON; relative paths resolve against base_dir."""
        base = Path(base_dir)

        def path_of(value: object, key: str, required: bool = False) -> Path | None:
            if value is None:
                if required:
                    raise InvalidArgument(f"{key} must be a non-empty path string")
                return None
            if not isinstance(value, str) or not value:
                raise InvalidArgument(f"{key} must be a non-empty path string")
            p = Path(value)
            return p if p.is_absolute() else base / p

        known = {
            "dataset_name", "gt_dir", "methods", "metrics", "extractor",
            "alpha_bounds", "alpha_tol", "gt_cfs", "text_embeddings_cfs",
            "prompts_file", "output_path", "output_format", "strict",
            "luminance_replace", "threads",
        }
        unknown = set(raw.keys()) - known
        if unknown:
            raise InvalidArgument(f"unknown config keys: {sorted(unknown)}")
        if "gt_dir" not in raw or "methods" not in raw or "metrics" not in raw:
            raise InvalidArgument("config requires gt_dir, methods, and metrics")

        methods = []
        for i, m in enumerate(raw["methods"]):
            if not isinstance(m, Mapping):
                raise InvalidArgument("each method must be an object")
            extra = set(m.keys()) - {
                "name", "pred_dir", "pred_cfs", "corrected_pred_cfs", "image_embeddings_cfs"
            }
            if extra:
                raise InvalidArgument(f"unknown method keys: {sorted(extra)}")
            if "name" not in m or "pred_dir" not in m:
                raise InvalidArgument(f"method #{i} requires name and pred_dir")
            methods.append(
                MethodSpec(
                    name=str(m["name"]),
                    pred_dir=path_of(m["pred_dir"], "pred_dir", required=True),
                    pred_cfs=path_of(m.get("pred_cfs"), "pred_cfs"),
                    corrected_pred_cfs=path_of(m.get("corrected_pred_cfs"), "corrected_pred_cfs"),
                    image_embeddings_cfs=path_of(
                        m.get("image_embeddings_cfs"), "image_embeddings_cfs"
                    ),
                )
            )

        metrics = tuple(parse_metric(name) for name in raw["metrics"])
        try:
            extractor = ExtractorMode(raw.get("extractor", "pixel-stats"))
        except ValueError as e:
            raise InvalidArgument(f"unknown extractor {raw.get('extractor')!r}") from e
        try:
            output_format = OutputFormat(raw.get("output_format", "csv"))
        except ValueError as e:
            raise InvalidArgument(f"unknown output_format {raw.get('output_format')!r}") from e
        bounds_raw = raw.get("alpha_bounds", list(DEFAULT_ALPHA_BOUNDS))
        if not isinstance(bounds_raw, (list, tuple)) or len(bounds_raw) != 2:
            raise InvalidArgument("alpha_bounds must be a [lo, hi] pair")

        cfg = cls(
            gt_dir=path_of(raw["gt_dir"], "gt_dir", required=True),
            methods=tuple(methods),
            metrics=metrics,
            dataset_name=str(raw.get("dataset_name", "dataset")),
            extractor=extractor,
            alpha_bounds=(float(bounds_raw[0]), float(bounds_raw[1])),
            alpha_tol=float(raw.get("alpha_tol", 1e-6)),
            gt_cfs=path_of(raw.get("gt_cfs"), "gt_cfs"),
            text_embeddings_cfs=path_of(raw.get("text_embeddings_cfs"), "text_embeddings_cfs"),
            prompts_file=path_of(raw.get("prompts_file"), "prompts_file"),
            output_path=path_of(raw.get("output_path"), "output_path"),
            output_format=output_format,
            strict=bool(raw.get("strict", False)),
            luminance_replace=bool(raw.get("luminance_replace", False)),
            threads=int(raw.get("threads", 1)),
        )
        cfg.validate()
        return cfg

    @classmethod
    def from_file(cls, path: str | Path) -> "EvalConfig":
        path = Path(path)
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise InvalidArgument(f"{path}: invalid JSON ({e})") from e
        if not isinstance(raw, Mapping):
            raise InvalidArgument(f"{path}: config must be a JSON object")
        return cls.from_dict(raw, base_dir=path.parent)


@dataclass(frozen=True)
class PairingResult:
    """Filename-stem pairing between a ground-truth and prediction directory."""

    pairs: tuple[tuple[str, Path, Path], ...]
    gt_only: tuple[str, ...]
    pred_only: tuple[str, ...]
    warnings: tuple[str, ...]


def _stem_map(files: Sequence[Path], side: str, warnings: list[str]) -> dict[str, Path]:
    out: dict[str, Path] = {}
    for p in files:
        if p.stem in out:
            warnings.append(f"{side}: duplicate stem {p.stem!r}; keeping {out[p.stem].name}")
        else:
            out[p.stem] = p
    return out


def ingest_pairs(gt_dir: str | Path, pred_dir: str | Path, strict: bool = False) -> PairingResult:
    """Pair image files by filename stem (extension-insensitive, case-sensitive).

    Unmatched stems are reported as warnings and excluded from the pairs.
    With strict=True any unmatched stem raises PairingMismatch. An empty
    intersection raises NoPairs.
    """
    warnings: list[str] = []
    gt_map = _stem_map(list_images(gt_dir), "ground truth", warnings)
    pred_map = _stem_map(list_images(pred_dir), "predictions", warnings)

    common = sorted(gt_map.keys() & pred_map.keys())
    gt_only = sorted(gt_map.keys() - pred_map.keys())
    pred_only = sorted(pred_map.keys() - gt_map.keys())

    if strict and (gt_only or pred_only or warnings):
        detail = []
        if gt_only:
            detail.append(f"{len(gt_only)} ground-truth stems without predictions")
        if pred_only:
            detail.append(f"{len(pred_only)} prediction stems without ground truth")
        detail.extend(warnings)
        raise PairingMismatch("; ".join(detail))
    if not common:
        raise NoPairs(f"no shared filename stems between {gt_dir} and {pred_dir}")

    warnings.extend(f"ground-truth file {s!r} has no prediction" for s in gt_only)
    warnings.extend(f"prediction file {s!r} has no ground truth" for s in pred_only)
    return PairingResult(
        pairs=tuple((s, gt_map[s], pred_map[s]) for s in common),
        gt_only=tuple(gt_only),
        pred_only=tuple(pred_only),
        warnings=tuple(warnings),
    )


_BW_PHRASE = re.compile(r"\bblack and white photos?\b", re.IGNORECASE)
_WS = re.compile(r"\s+")


def clean_caption(text: str) -> str:
    """Strip captioning artifacts from generated captions.

    Removes every whitespace-delimited token whose lowercase form starts
    with "ara", then removes the phrase "black and white photo(s)"
    (case-insensitive) until none remains, and collapses runs of
    whitespace. Idempotent: cleaning a cleaned caption changes nothing.
    """
    tokens = [t for t in text.split() if not t.lower().startswith("ara")]
    s = " ".join(tokens)
    while True:
        t = _WS.sub(" ", _BW_PHRASE.sub(" ", s)).strip()
        if t == s:
            return t
        s = t


class SynthMode(enum.Enum):
    SMOOTH_NONCLIPPING = "smooth"
    GENERAL = "general"


# Smooth-set parameters: a coarse grid of YUV values far enough inside the
# gamut that chroma scaling up to alpha = 4 never clips, even after 8-bit
# quantization. Worst case: |U| <= 0.042 after quantization, so the blue
# channel moves by at most 4 * 0.042 / 0.492 = 0.342 around Y in [0.346,
# 0.654], staying inside [0, 1].
_SYNTH_GRID = 5
_SYNTH_Y = (0.35, 0.65)
_SYNTH_CHROMA = 0.04


def synth_set(
    seed: int,
    n: int,
    size: tuple[int, int],
    mode: SynthMode,
    out_dir: str | Path,
) -> list[Path]:
    """Write n deterministic synthetic PNGs and return their paths.

    size is (width, height). SMOOTH_NONCLIPPING images are low-frequency
    color fields built so that chroma scaling with alpha up to 4 stays in
    gamut with zero clipped pixels; GENERAL images are unconstrained
    low-frequency RGB fields.
    """
    if n < 2:
        raise InvalidArgument(f"a synthetic set needs at least 2 images, got {n}")
    width, height = int(size[0]), int(size[1])
    if height < _SYNTH_GRID or width < _SYNTH_GRID:
        raise InvalidArgument(f"size must be at least {_SYNTH_GRID} pixels per side")
    if not isinstance(mode, SynthMode):
        raise InvalidArgument(f"mode must be a SynthMode, got {mode!r}")

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)
    paths: list[Path] = []
    for i in range(n):
        if mode is SynthMode.SMOOTH_NONCLIPPING:
            y = rng.uniform(_SYNTH_Y[0], _SYNTH_Y[1], (_SYNTH_GRID, _SYNTH_GRID))
            u = rng.uniform(-_SYNTH_CHROMA, _SYNTH_CHROMA, (_SYNTH_GRID, _SYNTH_GRID))
            v = rng.uniform(-_SYNTH_CHROMA, _SYNTH_CHROMA, (_SYNTH_GRID, _SYNTH_GRID))
            grid = np.stack([y, u, v], axis=-1)
            yuv = PlanarImage(ColorSpace.YUV, resize_bilinear(grid, height, width))
            img, _ = yuv_to_srgb(yuv, clip=False)
        else:
            grid = rng.uniform(0.0, 1.0, (_SYNTH_GRID, _SYNTH_GRID, 3))
            img = PlanarImage.srgb(resize_bilinear(grid, height, width))
        path = out / f"synth_{i:04d}.png"
        save_image(img, path)
        paths.append(path)
    return paths


@dataclass(frozen=True)
class SweepPoint:
    alpha: float
    mean_cf: float
    fid: float


def saturation_sweep(
    images_dir: str | Path,
    alphas: Sequence[float],
    extractor: "PixelStatsExtractor | None" = None,
    threads: int = 1,
) -> list[SweepPoint]:
    """Chroma-scale an image set by each alpha and measure FID against the originals.

    Returns one (alpha, mean colorfulness, FID) point per alpha, in the
    given order. At alpha = 1 the scaled set is the original set and the
    FID is exactly zero.
    """
    if not alphas:
        raise InvalidArgument("alphas must be non-empty")
    for a in alphas:
        if not math.isfinite(a) or a <= 0.0:
            raise InvalidAlpha(f"alphas must be positive, got {a!r}")
    files = list_images(images_dir)
    if len(files) < 2:
        raise InsufficientSamples(f"sweep needs at least 2 images, found {len(files)}")
    ext = extractor if extractor is not None else PixelStatsExtractor()

    images = _pmap(load_image, files, threads)
    base_feats = np.stack(_pmap(ext.extract, images, threads))
    base_stats = fit_gaussian(base_feats)

    points: list[SweepPoint] = []
    for alpha in alphas:
        scaled = _pmap(lambda img: chroma_scale(img, alpha)[0], images, threads)
        mean_cf = float(np.mean(_pmap(colorfulness, scaled, threads)))
        feats = np.stack(_pmap(ext.extract, scaled, threads))
        value = frechet_distance(base_stats, fit_gaussian(feats))
        points.append(SweepPoint(alpha=float(alpha), mean_cf=mean_cf, fid=value))
    return points


@dataclass(frozen=True)
class MethodRow:
    method: str
    values: Mapping[Metric, float | str]
    alpha: AlphaSolution | None = None


@dataclass(frozen=True)
class MetricReport:
    """Everything a rendered report contains, in deterministic order."""

    dataset_name: str
    n_images: int
    metrics: tuple[Metric, ...]
    rows: tuple[MethodRow, ...]
    extractor: ExtractorMode
    luminance_replace: bool
    gt_mean_cf: float
    warnings: tuple[str, ...] = ()


def _pmap(fn: Callable[[T], U], items: Iterable[T], threads: int) -> list[U]:
    """Order-preserving map, threaded when threads > 1."""
    seq = list(items)
    if threads <= 1 or len(seq) <= 1:
        return [fn(x) for x in seq]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, seq))


def _clip_score_for_method(
    image_features: FeatureSet, text_features: FeatureSet
) -> float:
    """Mean CLIP score over prompts matched to image ids.

    A prompt id matches the image with the identical id, or the image id
    before a '#' suffix, so several prompts may score one image.
    """
    image_index = {i: k for k, i in enumerate(image_features.ids)}
    scores: list[float] = []
    for row, tid in enumerate(text_features.ids):
        iid = tid if tid in image_index else tid.split("#", 1)[0]
        if iid not in image_index:
            continue
        img_emb = Embedding(
            id=iid,
            kind=EmbeddingKind.IMAGE,
            vector=image_features.data[image_index[iid]].astype(np.float64),
        )
        txt_emb = Embedding(
            id=tid, kind=EmbeddingKind.TEXT, vector=text_features.data[row].astype(np.float64)
        )
        scores.append(clip_score(img_emb, txt_emb))
    if not scores:
        raise NoPairs("no prompt ids match any image id")
    return float(np.mean(scores))


def run_benchmark(cfg: EvalConfig) -> MetricReport:
    """Evaluate every configured method and assemble the report.

    Per-metric failures are recorded in the affected cell as an
    "error: ..." string unless strict mode is on, in which case the first
    failure aborts the run.
    """
    cfg.validate()
    requested = tuple(m for m in METRIC_ORDER if m in set(cfg.metrics))
    warnings: list[str] = []

    gt_files = list_images(cfg.gt_dir)
    if not gt_files:
        raise EmptyInput(f"no images in ground-truth directory {cfg.gt_dir}")
    gt_images = _pmap(load_image, gt_files, cfg.threads)
    gt_by_stem = {p.stem: img for p, img in zip(gt_files, gt_images)}
    gt_cf = CFSummary.from_pairs(
        zip((p.stem for p in gt_files), _pmap(colorfulness, gt_images, cfg.threads))
    )

    pixel_extractor = PixelStatsExtractor() if cfg.extractor is ExtractorMode.PIXEL_STATS else None
    gt_stats: GaussianStats | None = None
    if Metric.FID in requested or Metric.HI_FID in requested:
        if pixel_extractor is not None:
            gt_feats = np.stack(_pmap(pixel_extractor.extract, gt_images, cfg.threads))
        else:
            gt_feats = load_cfs(cfg.gt_cfs)
        gt_stats = fit_gaussian(gt_feats)

    text_features = (
        load_cfs(cfg.text_embeddings_cfs) if Metric.CLIP_SCORE in requested else None
    )

    rows: list[MethodRow] = []
    for method in cfg.methods:
        values: dict[Metric, float | str] = {}
        alpha_sol: AlphaSolution | None = None

        pred_files = list_images(method.pred_dir)
        pred_images = _pmap(load_image, pred_files, cfg.threads)
        pred_by_stem = {p.stem: img for p, img in zip(pred_files, pred_images)}

        pairing: PairingResult | None = None
        if set(requested) & _PAIRED_METRICS or cfg.strict:
            try:
                pairing = ingest_pairs(cfg.gt_dir, method.pred_dir, strict=cfg.strict)
                warnings.extend(f"{method.name}: {w}" for w in pairing.warnings)
            except NoPairs as e:
                if cfg.strict:
                    raise
                warnings.append(f"{method.name}: {e}")

        def compute(metric: Metric) -> float:
            if metric in (Metric.CF, Metric.DELTA_CF, Metric.HI_FID) or (
                metric is Metric.FID and pixel_extractor is not None
            ):
                if not pred_images:
                    raise EmptyInput(f"no images in prediction directory {method.pred_dir}")
            if metric is Metric.CF or metric is Metric.DELTA_CF:
                pred_cf = CFSummary.from_pairs(
                    zip(
                        (p.stem for p in pred_files),
                        _pmap(colorfulness, pred_images, cfg.threads),
                    )
                )
                if metric is Metric.CF:
                    return pred_cf.mean_cf
                return abs(gt_cf.mean_cf - pred_cf.mean_cf)
            if metric is Metric.FID:
                if pixel_extractor is not None:
                    feats = np.stack(_pmap(pixel_extractor.extract, pred_images, cfg.threads))
                else:
                    feats = load_cfs(method.pred_cfs)
                return frechet_distance(gt_stats, fit_gaussian(feats))
            if metric is Metric.HI_FID:
                nonlocal alpha_sol
                alpha_sol = optimize_alpha(
                    gt_cf, pred_images, bounds=cfg.alpha_bounds, tol=cfg.alpha_tol
                )
                if pixel_extractor is not None:
                    corrected = _pmap(
                        lambda img: chroma_scale(img, alpha_sol.alpha_star)[0],
                        pred_images,
                        cfg.threads,
                    )
                    feats = np.stack(_pmap(pixel_extractor.extract, corrected, cfg.threads))
                else:
                    feats = load_cfs(method.corrected_pred_cfs)
                return frechet_distance(gt_stats, fit_gaussian(feats))
            if metric is Metric.CLIP_SCORE:
                return _clip_score_for_method(load_cfs(method.image_embeddings_cfs), text_features)
            # PSNR / SSIM need pairs.
            if pairing is None or not pairing.pairs:
                raise NoPairs("paired metrics need shared filename stems")

            def one(pair: tuple[str, Path, Path]) -> float:
                stem, _, _ = pair
                gt_img = gt_by_stem[stem]
                pred_img = pred_by_stem[stem]
                if cfg.luminance_replace:
                    pred_img = luminance_replace(pred_img, to_grayscale(gt_img))
                    gt_img = PlanarImage.srgb(
                        resize_bilinear(gt_img.data, pred_img.height, pred_img.width)
                    )
                return psnr(gt_img, pred_img) if metric is Metric.PSNR else ssim(gt_img, pred_img)

            return float(np.mean(_pmap(one, pairing.pairs, cfg.threads)))

        for metric in requested:
            try:
                values[metric] = compute(metric)
            except ChromabenchError as e:
                if cfg.strict:
                    raise
                values[metric] = f"error: {e}"

        rows.append(MethodRow(method=method.name, values=dict(values), alpha=alpha_sol))

    return MetricReport(
        dataset_name=cfg.dataset_name,
        n_images=len(gt_files),
        metrics=requested,
        rows=tuple(rows),
        extractor=cfg.extractor,
        luminance_replace=cfg.luminance_replace,
        gt_mean_cf=gt_cf.mean_cf,
        warnings=tuple(warnings),
    )
