"""Model loading and the small adapters that hide framework version drift.

Both loaders download checkpoints on first use and raise WeightsUnavailable
when the hub cannot be reached, so callers can degrade cleanly in offline
environments.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import torch

from .errors import WeightsUnavailable
from .job import DEFAULT_CLIP_VARIANT

__all__ = ["ClipBundle", "load_clip", "load_inception", "pooled_output"]


def load_inception(device: str = "cpu") -> torch.nn.Module:
    """ImageNet Inception-v3 rigged to emit pool3 activations.

    transform_input keeps the network's own channel renormalization, so the
    caller only supplies RGB in [0, 1]; replacing fc with Identity makes the
    eval-mode forward pass return the 2048-wide pooled vector directly.
    """
    from torchvision.models import Inception_V3_Weights, inception_v3

    try:
        net = inception_v3(weights=Inception_V3_Weights.IMAGENET1K_V1, transform_input=True)
    except Exception as exc:
        raise WeightsUnavailable(f"could not load Inception-v3 weights: {exc}") from exc
    net.fc = torch.nn.Identity()
    return net.to(device).eval()


@dataclass(frozen=True)
class ClipBundle:
    """A loaded CLIP model plus its preprocessors and the name to stamp into CFS meta."""

    name: str
    model: Any
    tokenizer: Any
    image_processor: Any
    device: str = "cpu"


def load_clip(variant: str = DEFAULT_CLIP_VARIANT, device: str = "cpu") -> ClipBundle:
    """Load a CLIP checkpoint; the CFS meta name becomes "clip-<variant leaf>"."""
    from transformers import CLIPImageProcessor, CLIPModel, CLIPTokenizer

    try:
        model = CLIPModel.from_pretrained(variant)
        tokenizer = CLIPTokenizer.from_pretrained(variant)
        image_processor = CLIPImageProcessor.from_pretrained(variant)
    except Exception as exc:
        raise WeightsUnavailable(f"could not load CLIP checkpoint {variant!r}: {exc}") from exc
    name = "clip-" + variant.rsplit("/", 1)[-1]
    return ClipBundle(
        name=name,
        model=model.to(device).eval(),
        tokenizer=tokenizer,
        image_processor=image_processor,
        device=device,
    )


def pooled_output(out: Any) -> torch.Tensor:
    # transformers >= 5 returns the full output object from get_*_features,
    # with the projected embedding in pooler_output; older versions return
    # the tensor itself
    if hasattr(out, "pooler_output"):
        return out.pooler_output
    return out
