"""Color conversion tests against an independent scalar reference and
published anchor values."""

from __future__ import annotations

import math

import numpy as np
import pytest

from chromabench import (
    ColorSpace,
    EmptyInput,
    GrayImage,
    InvalidArgument,
    InvalidColorSpace,
    PlanarImage,
    lab_to_srgb,
    luminance_replace,
    resize_bilinear,
    srgb_to_lab,
    srgb_to_yuv,
    to_grayscale,
    yuv_to_srgb,
)
from conftest import make_general_image, make_random_pixels


def lab_reference(rgb: tuple[float, float, float]) -> tuple[float, float, float]:
    """Scalar textbook composition: sRGB -> linear -> XYZ (D65) -> CIELAB.

    Written independently of the library (per-component Python floats),
    using the IEC 61966-2-1 matrix with its own row sums as white.
    """

    def lin(c: float) -> float:
        return c / 12.92 if c <= 0.04045 else ((c + 0.055) / 1.055) ** 2.4

    m = (
        (0.4124564, 0.3575761, 0.1804375),
        (0.2126729, 0.7151522, 0.0721750),
        (0.0193339, 0.1191920, 0.9503041),
    )
    r, g, b = (lin(c) for c in rgb)
    xyz = [row[0] * r + row[1] * g + row[2] * b for row in m]
    white = [sum(row) for row in m]
    delta = 6.0 / 29.0

    def f(t: float) -> float:
        return t ** (1.0 / 3.0) if t > delta**3 else t / (3 * delta**2) + 4.0 / 29.0

    fx, fy, fz = (f(c / w) for c, w in zip(xyz, white))
    return 116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)


def one_pixel(r: float, g: float, b: float) -> PlanarImage:
    return PlanarImage.srgb(np.array([[[r, g, b]]]))


class TestLab:
    def test_white_is_exact(self):
        lab = srgb_to_lab(one_pixel(1.0, 1.0, 1.0)).data[0, 0]
        assert abs(lab[0] - 100.0) < 1e-9
        assert abs(lab[1]) < 1e-9
        assert abs(lab[2]) < 1e-9

    def test_black_is_exact(self):
        lab = srgb_to_lab(one_pixel(0.0, 0.0, 0.0)).data[0, 0]
        assert np.abs(lab).max() < 1e-9

    def test_mid_gray_anchor(self):
        # 50% sRGB gray sits at L* 53.389 under D65.
        lab = srgb_to_lab(one_pixel(0.5, 0.5, 0.5)).data[0, 0]
        assert abs(lab[0] - 53.389) < 5e-3
        assert abs(lab[1]) < 1e-9
        assert abs(lab[2]) < 1e-9

    def test_pure_red_anchor(self):
        # Classic published CIELAB coordinates of sRGB red (D65, 2 deg).
        lab = srgb_to_lab(one_pixel(1.0, 0.0, 0.0)).data[0, 0]
        assert abs(lab[0] - 53.24) < 0.05
        assert abs(lab[1] - 80.09) < 0.05
        assert abs(lab[2] - 67.20) < 0.05

    def test_neutral_axis_has_zero_chroma(self):
        grays = np.linspace(0.0, 1.0, 64)
        img = PlanarImage.srgb(np.stack([grays] * 3, axis=-1)[None, :, :])
        lab = srgb_to_lab(img).data
        assert np.abs(lab[..., 1:]).max() < 1e-9

    def test_matches_scalar_reference(self):
        rng = np.random.default_rng(11)
        pixels = rng.uniform(0.0, 1.0, (40, 3))
        got = srgb_to_lab(PlanarImage.srgb(pixels[None, :, :])).data[0]
        for i, (r, g, b) in enumerate(pixels):
            expected = lab_reference((r, g, b))
            assert np.abs(got[i] - np.array(expected)).max() < 1e-10

    def test_roundtrip_in_gamut(self):
        rng = np.random.default_rng(3)
        img = make_random_pixels(rng, 2000)
        back = lab_to_srgb(srgb_to_lab(img))
        assert np.abs(back.data - img.data).max() < 1e-6

    def test_out_of_gamut_lab_clips(self):
        # L = 60 with huge positive a is outside sRGB; channels must clamp.
        lab = PlanarImage(ColorSpace.LAB, np.array([[[60.0, 200.0, 0.0]]]))
        out = lab_to_srgb(lab)
        assert out.data.min() >= 0.0 and out.data.max() <= 1.0

    def test_wrong_space_rejected(self):
        img = one_pixel(0.5, 0.5, 0.5)
        with pytest.raises(InvalidColorSpace):
            srgb_to_lab(srgb_to_lab(img))
        with pytest.raises(InvalidColorSpace):
            lab_to_srgb(img)


class TestYuv:
    def test_pure_red_values(self):
        yuv = srgb_to_yuv(one_pixel(1.0, 0.0, 0.0)).data[0, 0]
        assert abs(yuv[0] - 0.299) < 1e-12
        assert abs(yuv[1] + 0.147108) < 1e-9
        assert abs(yuv[2] - 0.614777) < 1e-9

    def test_white_maps_to_unit_luma(self):
        yuv = srgb_to_yuv(one_pixel(1.0, 1.0, 1.0)).data[0, 0]
        assert abs(yuv[0] - 1.0) < 1e-12
        assert abs(yuv[1]) < 1e-12
        assert abs(yuv[2]) < 1e-12

    def test_neutral_has_zero_chroma(self):
        grays = np.linspace(0.0, 1.0, 50)
        img = PlanarImage.srgb(np.stack([grays] * 3, axis=-1)[None, :, :])
        yuv = srgb_to_yuv(img).data
        assert np.abs(yuv[..., 1:]).max() < 1e-9

    def test_roundtrip_is_exact_inverse(self):
        rng = np.random.default_rng(5)
        img = make_random_pixels(rng, 5000)
        back, fraction = yuv_to_srgb(srgb_to_yuv(img), clip=False)
        assert np.abs(back.data - img.data).max() < 1e-9
        assert fraction == 0.0

    def test_clip_reports_clamped_pixels(self):
        yuv = PlanarImage(ColorSpace.YUV, np.array([[[1.0, 0.3, 0.3]]]))
        out, fraction = yuv_to_srgb(yuv, clip=True)
        assert out.data.min() >= 0.0 and out.data.max() <= 1.0
        assert fraction > 0.0

    def test_no_clip_passes_values_through(self):
        yuv = PlanarImage(ColorSpace.YUV, np.array([[[1.0, 0.3, 0.3]]]))
        out, fraction = yuv_to_srgb(yuv, clip=False)
        assert out.data.max() > 1.0
        assert fraction > 0.0

    def test_wrong_space_rejected(self):
        with pytest.raises(InvalidColorSpace):
            srgb_to_yuv(PlanarImage(ColorSpace.LAB, np.zeros((1, 1, 3))))
        with pytest.raises(InvalidColorSpace):
            yuv_to_srgb(one_pixel(0.5, 0.5, 0.5))


class TestImages:
    def test_bad_shapes_rejected(self):
        with pytest.raises(InvalidArgument):
            PlanarImage.srgb(np.zeros((4, 4)))
        with pytest.raises(InvalidArgument):
            PlanarImage.srgb(np.zeros((4, 4, 4)))
        with pytest.raises(InvalidArgument):
            PlanarImage.srgb(np.full((2, 2, 3), np.nan))
        with pytest.raises(InvalidArgument):
            GrayImage(np.zeros((2, 2, 1)))
        with pytest.raises(InvalidArgument):
            GrayImage(np.full((2, 2), 101.0))

    def test_validate_checks_ranges(self):
        img = PlanarImage.srgb(np.full((2, 2, 3), 1.5))
        with pytest.raises(InvalidArgument):
            img.validate()
        PlanarImage.srgb(np.full((2, 2, 3), 0.5)).validate()

    def test_data_is_frozen(self):
        img = one_pixel(0.5, 0.5, 0.5)
        with pytest.raises(ValueError):
            img.data[0, 0, 0] = 1.0

    def test_grayscale_matches_lab_l(self):
        rng = np.random.default_rng(9)
        img = make_general_image(rng, 32, 32)
        gray = to_grayscale(img)
        assert np.abs(gray.luminance - srgb_to_lab(img).data[..., 0]).max() < 1e-12
        assert gray.luminance.min() >= 0.0 and gray.luminance.max() <= 100.0


class TestResize:
    def test_identity_returns_copy(self):
        arr = np.arange(12, dtype=np.float64).reshape(2, 2, 3)
        out = resize_bilinear(arr, 2, 2)
        assert np.array_equal(out, arr)
        assert out is not arr

    def test_small_upscale_fixture(self):
        # Half-pixel centers with edge replication: sample points for width
        # 2 -> 4 are x = -0.25, 0.25, 0.75, 1.25.
        arr = np.array([[0.0, 10.0], [0.0, 10.0]])
        out = resize_bilinear(arr, 2, 4)
        expected = np.array([[0.0, 2.5, 7.5, 10.0], [0.0, 2.5, 7.5, 10.0]])
        assert np.abs(out - expected).max() < 1e-12

    def test_constant_stays_constant(self):
        arr = np.full((7, 5, 3), 0.37)
        out = resize_bilinear(arr, 64, 48)
        assert np.abs(out - 0.37).max() < 1e-12

    def test_range_is_preserved(self):
        rng = np.random.default_rng(2)
        arr = rng.uniform(0.2, 0.8, (9, 11))
        out = resize_bilinear(arr, 50, 60)
        assert out.min() >= 0.2 - 1e-12 and out.max() <= 0.8 + 1e-12

    def test_bad_target_rejected(self):
        with pytest.raises(InvalidArgument):
            resize_bilinear(np.zeros((2, 2)), 0, 2)
        with pytest.raises(EmptyInput):
            resize_bilinear(np.zeros((0, 2)), 2, 2)


class TestLuminanceReplace:
    def test_output_shape_and_l_channel(self):
        rng = np.random.default_rng(21)
        col = make_general_image(rng, 96, 80)
        gray = GrayImage(resize_bilinear(rng.uniform(0.0, 100.0, (5, 5)), 64, 64))
        out = luminance_replace(col, gray)
        assert out.data.shape == (512, 512, 3)
        l_out = srgb_to_lab(out).data[..., 0]
        l_ref = resize_bilinear(gray.luminance, 512, 512)
        assert np.abs(l_out - l_ref).max() < 1e-4

    def test_neutral_input_renders_gray(self):
        col = PlanarImage.srgb(np.full((16, 16, 3), 0.5))
        gray = GrayImage(np.full((16, 16), 70.0))
        out = luminance_replace(col, gray)
        lab = srgb_to_lab(out).data
        assert np.abs(lab[..., 0] - 70.0).max() < 1e-9
        assert np.abs(lab[..., 1:]).max() < 1e-9

    def test_extreme_luminance_stays_exact(self):
        rng = np.random.default_rng(4)
        col = make_general_image(rng, 32, 32)
        for level in (0.0, 100.0):
            out = luminance_replace(col, GrayImage(np.full((8, 8), level)))
            l_out = srgb_to_lab(out).data[..., 0]
            assert np.abs(l_out - level).max() < 1e-6

    def test_empty_inputs_rejected(self):
        col = PlanarImage.srgb(np.zeros((0, 4, 3)))
        gray = GrayImage(np.zeros((0, 4)))
        with pytest.raises(EmptyInput):
            luminance_replace(col, GrayImage(np.full((4, 4), 50.0)))
        with pytest.raises(EmptyInput):
            luminance_replace(PlanarImage.srgb(np.full((4, 4, 3), 0.5)), gray)

    def test_wrong_space_rejected(self):
        lab = PlanarImage(ColorSpace.LAB, np.zeros((4, 4, 3)))
        with pytest.raises(InvalidColorSpace):
            luminance_replace(lab, GrayImage(np.full((4, 4), 50.0)))
