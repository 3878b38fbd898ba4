"""Shared fixtures: seeded stand-in networks and tiny image corpora.

The real pretrained checkpoints need network access, so the plumbing tests
run the genuine architectures with deterministically seeded random weights:
every contract under test (shapes, ordering, determinism, skipping, file
format) is weight-agnostic. Tests that only make sense with trained weights
probe for them and skip cleanly when the hub is unreachable.
"""

from __future__ import annotations

import json

import numpy as np
import pytest
import torch
from PIL import Image

from chromabench_extractor import ClipBundle


@pytest.fixture(scope="session")
def inception_net() -> torch.nn.Module:
    from torchvision.models import inception_v3

    torch.manual_seed(0)
    net = inception_v3(weights=None, transform_input=True, init_weights=True)
    net.fc = torch.nn.Identity()
    return net.eval()


@pytest.fixture(scope="session")
def clip_bundle(tmp_path_factory) -> ClipBundle:
    """A real CLIPModel at toy scale with a handcrafted character vocabulary."""
    from transformers import (
        CLIPConfig,
        CLIPImageProcessor,
        CLIPModel,
        CLIPTextConfig,
        CLIPTokenizer,
        CLIPVisionConfig,
    )

    root = tmp_path_factory.mktemp("tiny-clip")
    vocab = {"<|startoftext|>": 0, "<|endoftext|>": 1}
    for ch in "abcdefghijklmnopqrstuvwxyz0123456789":
        vocab[ch] = len(vocab)
        vocab[ch + "</w>"] = len(vocab)
    (root / "vocab.json").write_text(json.dumps(vocab), encoding="utf-8")
    (root / "merges.txt").write_text("#version: 0.2\n", encoding="utf-8")
    tokenizer = CLIPTokenizer(str(root / "vocab.json"), str(root / "merges.txt"))

    config = CLIPConfig(
        text_config=CLIPTextConfig(
            vocab_size=len(vocab),
            hidden_size=32,
            intermediate_size=64,
            num_hidden_layers=2,
            num_attention_heads=2,
            max_position_embeddings=77,
            bos_token_id=0,
            eos_token_id=1,
        ),
        vision_config=CLIPVisionConfig(
            hidden_size=32,
            intermediate_size=64,
            num_hidden_layers=2,
            num_attention_heads=2,
            image_size=64,
            patch_size=16,
        ),
        projection_dim=24,
    )
    torch.manual_seed(1)
    model = CLIPModel(config).eval()
    processor = CLIPImageProcessor(
        size={"shortest_edge": 64}, crop_size={"height": 64, "width": 64}
    )
    return ClipBundle(
        name="clip-tiny-test", model=model, tokenizer=tokenizer, image_processor=processor
    )


def write_images(dirpath, n: int, seed: int, side: int = 40) -> list[str]:
    """Drop n seeded noise PNGs into dirpath; returns the stems in name order."""
    dirpath.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)
    stems = []
    for i in range(n):
        arr = rng.integers(0, 256, size=(side, side + 8, 3), dtype=np.uint8)
        stem = f"img_{i:03d}"
        Image.fromarray(arr, "RGB").save(dirpath / f"{stem}.png")
        stems.append(stem)
    return stems


@pytest.fixture()
def image_dir(tmp_path):
    d = tmp_path / "images"
    write_images(d, n=6, seed=11)
    return d
