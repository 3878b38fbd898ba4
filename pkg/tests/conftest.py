"""Shared test fixtures: deterministic synthetic images built in memory."""

from __future__ import annotations

import numpy as np
import pytest

from chromabench import ColorSpace, PlanarImage, resize_bilinear, yuv_to_srgb

# Mirrors the smooth-set construction: low-frequency YUV fields with chroma
# small enough that scaling by alpha up to 4 cannot clip.
SMOOTH_Y = (0.35, 0.65)
SMOOTH_CHROMA = 0.04


def make_smooth_image(rng: np.random.Generator, height: int = 64, width: int = 64) -> PlanarImage:
    y = rng.uniform(SMOOTH_Y[0], SMOOTH_Y[1], (5, 5))
    u = rng.uniform(-SMOOTH_CHROMA, SMOOTH_CHROMA, (5, 5))
    v = rng.uniform(-SMOOTH_CHROMA, SMOOTH_CHROMA, (5, 5))
    grid = np.stack([y, u, v], axis=-1)
    img, _ = yuv_to_srgb(PlanarImage(ColorSpace.YUV, resize_bilinear(grid, height, width)), clip=False)
    return img


def make_general_image(rng: np.random.Generator, height: int = 64, width: int = 64) -> PlanarImage:
    grid = rng.uniform(0.0, 1.0, (5, 5, 3))
    return PlanarImage.srgb(resize_bilinear(grid, height, width))


def make_random_pixels(rng: np.random.Generator, n: int) -> PlanarImage:
    """n independent uniform in-gamut pixels as an n x 1 image."""
    return PlanarImage.srgb(rng.uniform(0.0, 1.0, (n, 1, 3)))


@pytest.fixture
def smooth_image():
    return make_smooth_image


@pytest.fixture
def general_image():
    return make_general_image


@pytest.fixture
def random_pixels():
    return make_random_pixels
