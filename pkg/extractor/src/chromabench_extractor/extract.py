"""Batch feature export: images or prompts in, one CFS file out.

The primary core is consumed only through its public surface (FeatureSet,
save_cfs and the CFS v1 format itself); nothing here reaches into its
internals.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np
import torch
from PIL import Image

from chromabench import FeatureSet, save_cfs

from .encoders import ClipBundle, load_clip, load_inception, pooled_output
from .errors import ExtractorError, InvalidJob, NoInputs
from .job import INCEPTION_DIM, ExtractJob, ExtractModel

__all__ = ["ExtractResult", "extract_clip", "extract_inception"]

IMAGE_SUFFIXES = {".png", ".jpg", ".jpeg", ".bmp", ".webp"}

# fixed input side for Inception-v3
_INCEPTION_SIDE = 299


@dataclass(frozen=True)
class ExtractResult:
    """What an export run produced and what it had to leave out."""

    path: Path
    n: int
    dim: int
    extractor: str
    skipped: tuple[str, ...]


def _list_images(root: Path) -> list[Path]:
    if not root.is_dir():
        raise NoInputs(f"{root} is not a directory")
    paths = sorted(
        (p for p in root.iterdir() if p.is_file() and p.suffix.lower() in IMAGE_SUFFIXES),
        key=lambda p: p.stem,
    )
    if not paths:
        raise NoInputs(f"no images found in {root}")
    stems = [p.stem for p in paths]
    dupes = sorted({s for s in stems if stems.count(s) > 1})
    if dupes:
        # CFS ids must be unique, so two extensions of one stem cannot coexist
        raise ExtractorError(f"duplicate image stems in {root}: {dupes}")
    return paths


def _open_rgb(path: Path) -> Image.Image | None:
    try:
        with Image.open(path) as im:
            return im.convert("RGB")
    except (OSError, ValueError):
        return None


def _batches(items: Sequence, size: int):
    for start in range(0, len(items), size):
        yield items[start : start + size]


def _save(job: ExtractJob, ids: list[str], rows: list[np.ndarray], name: str,
          skipped: list[str]) -> ExtractResult:
    if not rows:
        raise NoInputs(f"nothing readable to embed in {job.input_path}")
    features = FeatureSet.from_rows(zip(ids, rows), extractor=name, version="1")
    job.output_path.parent.mkdir(parents=True, exist_ok=True)
    save_cfs(features, job.output_path)
    return ExtractResult(
        path=job.output_path,
        n=features.n,
        dim=features.dim,
        extractor=name,
        skipped=tuple(skipped),
    )


def extract_inception(job: ExtractJob, model: torch.nn.Module | None = None) -> ExtractResult:
    """Embed a directory of images as Inception-v3 pool3 rows and write a CFS file.

    Unreadable files are skipped and reported in the result rather than
    aborting the run. Pass a prepared model to skip the checkpoint download
    (it must already map RGB [0, 1] batches to pooled vectors in eval mode).
    """
    if job.model is not ExtractModel.INCEPTION_POOL3:
        raise InvalidJob(f"extract_inception cannot run a {job.model.value!r} job")
    net = model if model is not None else load_inception(job.device)

    ids: list[str] = []
    arrays: list[np.ndarray] = []
    skipped: list[str] = []
    for path in _list_images(job.input_path):
        im = _open_rgb(path)
        if im is None:
            skipped.append(f"{path.name}: unreadable image")
            continue
        im = im.resize((_INCEPTION_SIDE, _INCEPTION_SIDE), Image.Resampling.BILINEAR)
        arrays.append(np.asarray(im, dtype=np.float32) / 255.0)
        ids.append(path.stem)

    rows: list[np.ndarray] = []
    with torch.no_grad():
        for chunk in _batches(arrays, job.batch_size):
            x = torch.from_numpy(np.stack(chunk)).permute(0, 3, 1, 2).to(job.device)
            y = net(x)
            if not torch.is_tensor(y):  # training-mode aux output, be tolerant
                y = y[0]
            rows.extend(np.asarray(y.cpu(), dtype=np.float32))

    result = _save(job, ids, rows, "inception-v3-pool3", skipped)
    if result.dim != INCEPTION_DIM:
        raise ExtractorError(f"pool3 rows must be {INCEPTION_DIM}-dim, got {result.dim}")
    return result


def _read_prompts(path: Path, skipped: list[str]) -> list[tuple[str, str]]:
    """Parse "id<TAB>caption" lines; bare lines get positional ids, blanks are skipped."""
    if not path.is_file():
        raise NoInputs(f"{path} is not a file")
    prompts: list[tuple[str, str]] = []
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if "\t" in line:
            pid, caption = line.split("\t", 1)
        else:
            pid, caption = f"line_{lineno:04d}", line
        if not caption.strip() or not pid.strip():
            skipped.append(f"line {lineno}: empty prompt")
            continue
        prompts.append((pid, caption))
    ids = [p for p, _ in prompts]
    dupes = sorted({i for i in ids if ids.count(i) > 1})
    if dupes:
        raise ExtractorError(f"duplicate prompt ids in {path}: {dupes}")
    return prompts


def extract_clip(job: ExtractJob, bundle: ClipBundle | None = None) -> ExtractResult:
    """Embed images (CLIP_IMAGE) or prompts (CLIP_TEXT) and write a CFS file.

    Rows are unit-normalized at export so downstream cosine scoring is a
    plain dot product. Both towers of one checkpoint share a projection
    width, so image and text files from the same variant have equal dims.
    """
    if job.model not in (ExtractModel.CLIP_IMAGE, ExtractModel.CLIP_TEXT):
        raise InvalidJob(f"extract_clip cannot run a {job.model.value!r} job")
    loaded = bundle if bundle is not None else load_clip(job.clip_variant, job.device)

    ids: list[str] = []
    rows: list[np.ndarray] = []
    skipped: list[str] = []

    with torch.no_grad():
        if job.model is ExtractModel.CLIP_IMAGE:
            images: list[Image.Image] = []
            for path in _list_images(job.input_path):
                im = _open_rgb(path)
                if im is None:
                    skipped.append(f"{path.name}: unreadable image")
                    continue
                images.append(im)
                ids.append(path.stem)
            for chunk in _batches(images, job.batch_size):
                pixels = loaded.image_processor(images=chunk, return_tensors="pt")["pixel_values"]
                out = pooled_output(loaded.model.get_image_features(pixel_values=pixels.to(loaded.device)))
                unit = torch.nn.functional.normalize(out, dim=-1)
                rows.extend(np.asarray(unit.cpu(), dtype=np.float32))
        else:
            prompts = _read_prompts(job.input_path, skipped)
            ids = [pid for pid, _ in prompts]
            captions = [c for _, c in prompts]
            for chunk in _batches(captions, job.batch_size):
                enc = loaded.tokenizer(list(chunk), padding=True, truncation=True, return_tensors="pt")
                out = pooled_output(
                    loaded.model.get_text_features(
                        input_ids=enc["input_ids"].to(loaded.device),
                        attention_mask=enc["attention_mask"].to(loaded.device),
                    )
                )
                unit = torch.nn.functional.normalize(out, dim=-1)
                rows.extend(np.asarray(unit.cpu(), dtype=np.float32))

    return _save(job, ids, rows, loaded.name, skipped)
