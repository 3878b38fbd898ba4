"""Gaussian fitting, matrix square roots, Fréchet distance closed forms,
chroma scaling, and the mean-colorfulness alpha search."""

from __future__ import annotations

import math

import numpy as np
import pytest

from chromabench import (
    CFSummary,
    ColorSpace,
    EmptyInput,
    GaussianStats,
    InsufficientSamples,
    InvalidAlpha,
    InvalidArgument,
    InvalidColorSpace,
    NotPSD,
    PixelStatsExtractor,
    PlanarImage,
    ShapeMismatch,
    chroma_scale,
    colorfulness,
    fid,
    fit_gaussian,
    frechet_distance,
    hue_invariant_fid,
    optimize_alpha,
    pixel_stats_extractor,
    sqrtm_psd,
)
from conftest import make_smooth_image

_LUMA = np.array([0.299, 0.587, 0.114])
_EXTRACTOR = PixelStatsExtractor()


def stats(mean, cov, n: int = 100) -> GaussianStats:
    return GaussianStats(mean=np.asarray(mean, dtype=float), cov=np.asarray(cov, dtype=float), n=n)


class TestFitGaussian:
    def test_two_point_example(self):
        g = fit_gaussian(np.array([[0.0, 0.0], [2.0, 0.0]]))
        assert np.array_equal(g.mean, [1.0, 0.0])
        assert np.array_equal(g.cov, [[2.0, 0.0], [0.0, 0.0]])
        assert g.n == 2 and g.dim == 2

    def test_matches_two_pass_covariance(self):
        rng = np.random.default_rng(67)
        x = rng.normal(size=(40, 5))
        g = fit_gaussian(x)
        mean = x.mean(axis=0)
        centered = x - mean
        cov = centered.T @ centered / (len(x) - 1)
        assert np.abs(g.mean - mean).max() < 1e-12
        assert np.abs(g.cov - cov).max() < 1e-12

    def test_one_dimensional_features(self):
        g = fit_gaussian(np.array([[1.0], [3.0], [5.0]]))
        assert g.mean[0] == 3.0
        assert abs(g.cov[0, 0] - 4.0) < 1e-12

    def test_errors(self):
        with pytest.raises(InsufficientSamples):
            fit_gaussian(np.zeros((1, 4)))
        with pytest.raises(InvalidArgument):
            fit_gaussian(np.zeros(4))
        with pytest.raises(InsufficientSamples):
            GaussianStats(mean=np.zeros(2), cov=np.eye(2), n=1)
        with pytest.raises(InvalidArgument):
            GaussianStats(mean=np.zeros(2), cov=np.array([[1.0, 0.5], [0.0, 1.0]]), n=5)


class TestSqrtmPsd:
    def test_diagonal(self):
        assert np.abs(sqrtm_psd(np.diag([4.0, 9.0])) - np.diag([2.0, 3.0])).max() < 1e-12

    def test_squares_back(self):
        rng = np.random.default_rng(71)
        b = rng.normal(size=(6, 6))
        a = b @ b.T
        root = sqrtm_psd(a)
        assert np.abs(root @ root - a).max() < 1e-9
        assert np.abs(root - root.T).max() == 0.0

    def test_rank_deficient(self):
        a = np.array([[1.0, 1.0], [1.0, 1.0]])
        root = sqrtm_psd(a)
        assert np.abs(root @ root - a).max() < 1e-12

    def test_rejects_indefinite(self):
        with pytest.raises(NotPSD):
            sqrtm_psd(np.diag([1.0, -0.5]))

    def test_rejects_asymmetric(self):
        with pytest.raises(NotPSD):
            sqrtm_psd(np.array([[1.0, 0.3], [0.0, 1.0]]))

    def test_rejects_non_square(self):
        with pytest.raises(ShapeMismatch):
            sqrtm_psd(np.zeros((2, 3)))


class TestFrechetDistance:
    def test_identical_is_exactly_zero(self):
        rng = np.random.default_rng(73)
        g = fit_gaussian(rng.normal(size=(50, 4)))
        assert frechet_distance(g, g) == 0.0

    def test_shared_covariance_reduces_to_mean_term(self):
        rng = np.random.default_rng(79)
        for d in (2, 8, 32):
            b = rng.normal(size=(d, d))
            cov = b @ b.T + 0.5 * np.eye(d)
            m1 = rng.normal(size=d)
            m2 = rng.normal(size=d)
            got = frechet_distance(stats(m1, cov), stats(m2, cov))
            want = float((m1 - m2) @ (m1 - m2))
            assert abs(got - want) < 1e-8 * (1.0 + want)

    def test_scaled_identities(self):
        for d, s1, s2 in ((3, 1.0, 2.0), (8, 0.5, 1.5)):
            got = frechet_distance(
                stats(np.zeros(d), s1**2 * np.eye(d)),
                stats(np.zeros(d), s2**2 * np.eye(d)),
            )
            assert abs(got - d * (s1 - s2) ** 2) < 1e-10

    def test_one_dimensional_closed_form(self):
        got = frechet_distance(stats([1.0], [[4.0]]), stats([3.0], [[9.0]]))
        assert abs(got - ((1 - 3) ** 2 + (2 - 3) ** 2)) < 1e-10

    def test_matches_scipy_sqrtm(self):
        scipy_linalg = pytest.importorskip("scipy.linalg")
        rng = np.random.default_rng(83)
        d = 6
        b1, b2 = rng.normal(size=(d, d)), rng.normal(size=(d, d))
        c1 = b1 @ b1.T + 0.1 * np.eye(d)
        c2 = b2 @ b2.T + 0.1 * np.eye(d)
        m1, m2 = rng.normal(size=d), rng.normal(size=d)
        cross = scipy_linalg.sqrtm(c1 @ c2).real
        want = float((m1 - m2) @ (m1 - m2) + np.trace(c1 + c2 - 2.0 * cross))
        got = frechet_distance(stats(m1, c1), stats(m2, c2))
        assert abs(got - want) < 1e-8 * (1.0 + abs(want))

    def test_symmetric(self):
        rng = np.random.default_rng(89)
        g1 = fit_gaussian(rng.normal(size=(60, 5)))
        g2 = fit_gaussian(rng.normal(loc=0.3, size=(60, 5)))
        a, b = frechet_distance(g1, g2), frechet_distance(g2, g1)
        assert abs(a - b) < 1e-9 * (1.0 + a)

    def test_singular_covariance_stays_finite(self):
        # Same degenerate covariance, means one apart: true value 1.0. The
        # ridge perturbs the cross term by O(1e-6) but no more.
        g1 = fit_gaussian(np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]))
        g2 = fit_gaussian(np.array([[0.0, 1.0], [1.0, 1.0], [2.0, 1.0]]))
        value = frechet_distance(g1, g2)
        assert math.isfinite(value)
        assert abs(value - 1.0) < 1e-4

    def test_dim_mismatch(self):
        with pytest.raises(ShapeMismatch):
            frechet_distance(stats(np.zeros(2), np.eye(2)), stats(np.zeros(3), np.eye(3)))


class TestFid:
    def test_same_features_zero(self):
        rng = np.random.default_rng(97)
        x = rng.normal(size=(80, 6))
        assert fid(x, x) == 0.0

    def test_same_distribution_small(self):
        rng = np.random.default_rng(101)
        a = rng.normal(size=(3000, 4))
        b = rng.normal(size=(3000, 4))
        assert fid(a, b) < 0.05

    def test_mean_shift_detected(self):
        rng = np.random.default_rng(103)
        a = rng.normal(size=(3000, 4))
        b = rng.normal(size=(3000, 4)) + np.array([1.0, 0.0, 0.0, 0.0])
        value = fid(a, b)
        assert abs(value - 1.0) < 0.15


class TestChromaScale:
    def test_alpha_one_is_bit_exact(self):
        rng = np.random.default_rng(107)
        img = make_smooth_image(rng, 16, 16)
        out, clipped = chroma_scale(img, 1.0)
        assert clipped == 0.0
        assert np.array_equal(out.data, img.data)

    def test_preserves_luma(self):
        rng = np.random.default_rng(109)
        img = make_smooth_image(rng, 32, 32)
        out, clipped = chroma_scale(img, 1.8)
        assert clipped == 0.0
        assert np.abs(out.data @ _LUMA - img.data @ _LUMA).max() < 1e-12

    def test_inverse_scaling_roundtrip(self):
        rng = np.random.default_rng(113)
        img = make_smooth_image(rng, 32, 32)
        down, _ = chroma_scale(img, 0.5)
        back, clipped = chroma_scale(down, 2.0)
        assert clipped == 0.0
        assert np.abs(back.data - img.data).max() < 1e-9

    def test_saturated_input_clips(self):
        arr = np.zeros((4, 4, 3))
        arr[..., 0] = 1.0
        out, clipped = chroma_scale(PlanarImage.srgb(arr), 2.0)
        assert clipped > 0.0
        assert out.data.min() >= 0.0 and out.data.max() <= 1.0

    def test_errors(self):
        img = PlanarImage.srgb(np.full((2, 2, 3), 0.5))
        for bad in (0.0, -1.0, math.inf, math.nan):
            with pytest.raises(InvalidAlpha):
                chroma_scale(img, bad)
        lab = PlanarImage(ColorSpace.LAB, np.zeros((2, 2, 3)))
        with pytest.raises(InvalidColorSpace):
            chroma_scale(lab, 1.5)


def cf_summary(images) -> CFSummary:
    return CFSummary.from_pairs((f"{i:03d}", colorfulness(im)) for i, im in enumerate(images))


class TestOptimizeAlpha:
    def test_recovers_inverse_of_applied_scale(self):
        # The residual shrinks with the bracket: it is bounded by
        # (tol / 2) * mean CF of the predictions, so a tight tol buys a
        # proportionally tight CF match.
        rng = np.random.default_rng(127)
        gt = [make_smooth_image(rng, 32, 32) for _ in range(8)]
        for beta in (0.7, 1.4):
            preds = [chroma_scale(im, beta)[0] for im in gt]
            sol = optimize_alpha(cf_summary(gt), preds, tol=1e-9)
            assert abs(sol.alpha_star - 1.0 / beta) < 1e-8
            assert sol.residual < 1e-7
            assert sol.clipped_fraction == 0.0

    def test_default_tol_bounds_alpha(self):
        rng = np.random.default_rng(129)
        gt = [make_smooth_image(rng, 32, 32) for _ in range(5)]
        preds = [chroma_scale(im, 0.5)[0] for im in gt]
        sol = optimize_alpha(cf_summary(gt), preds)
        assert abs(sol.alpha_star - 2.0) < 1e-3

    def test_identity_needs_no_correction(self):
        rng = np.random.default_rng(131)
        gt = [make_smooth_image(rng, 32, 32) for _ in range(5)]
        sol = optimize_alpha(cf_summary(gt), gt, tol=1e-9)
        assert abs(sol.alpha_star - 1.0) < 1e-8
        assert sol.residual < 1e-7

    def test_unreachable_target_returns_nearest_bound(self):
        rng = np.random.default_rng(137)
        preds = [make_smooth_image(rng, 32, 32) for _ in range(4)]
        huge = CFSummary.from_pairs([("a", 1e6)])
        sol = optimize_alpha(huge, preds, bounds=(0.5, 2.0))
        assert sol.alpha_star == 2.0
        assert sol.residual > 0.0
        tiny = CFSummary.from_pairs([("a", 0.0)])
        sol = optimize_alpha(tiny, preds, bounds=(0.5, 2.0))
        assert sol.alpha_star == 0.5

    def test_errors(self):
        rng = np.random.default_rng(139)
        preds = [make_smooth_image(rng, 16, 16)]
        target = CFSummary.from_pairs([("a", 10.0)])
        with pytest.raises(InvalidAlpha):
            optimize_alpha(target, preds, bounds=(0.0, 2.0))
        with pytest.raises(InvalidAlpha):
            optimize_alpha(target, preds, bounds=(2.0, 1.0))
        with pytest.raises(InvalidArgument):
            optimize_alpha(target, preds, tol=0.0)
        with pytest.raises(EmptyInput):
            optimize_alpha(CFSummary.from_pairs([]), preds)
        with pytest.raises(EmptyInput):
            optimize_alpha(target, [])


class TestHueInvariantFid:
    def test_corrects_pure_desaturation(self):
        rng = np.random.default_rng(149)
        gt = [make_smooth_image(rng, 32, 32) for _ in range(10)]
        preds = [chroma_scale(im, 0.6)[0] for im in gt]
        plain = fid(
            np.stack([pixel_stats_extractor(im) for im in gt]),
            np.stack([pixel_stats_extractor(im) for im in preds]),
        )
        value, sol = hue_invariant_fid(gt, preds, _EXTRACTOR, tol=1e-6)
        assert abs(sol.alpha_star - 1.0 / 0.6) < 1e-5
        assert value < 1e-6
        assert plain > 100.0 * value

    def test_identity_is_near_zero(self):
        rng = np.random.default_rng(151)
        gt = [make_smooth_image(rng, 32, 32) for _ in range(6)]
        value, sol = hue_invariant_fid(gt, list(gt), _EXTRACTOR, tol=1e-6)
        assert value < 1e-9
        assert abs(sol.alpha_star - 1.0) < 1e-5

    def test_empty_rejected(self):
        rng = np.random.default_rng(157)
        imgs = [make_smooth_image(rng, 16, 16)]
        with pytest.raises(EmptyInput):
            hue_invariant_fid([], imgs, _EXTRACTOR)
        with pytest.raises(EmptyInput):
            hue_invariant_fid(imgs, [], _EXTRACTOR)
