import math

import numpy as np
import pytest
from scipy.stats import spearmanr

from brightseg.errors import DegeneratePatch, InsufficientSamples, InvalidParams
from brightseg.spatial_stats import (DEFAULT_LOWER_BOUND, SpatialThresholds,
                                     adjusted_variogram, calibrate_lb, cssni,
                                     extract_patch, morans_i, nav_normalized,
                                     ssdlm)
from conftest import random_patch
from oracles import (adjusted_variogram_brute, cssni_brute, glcm_homogeneity,
                     morans_i_brute, ssdlm_brute)


def patch_with_sd(sd, size=5):
    """Patch of exact standard deviation sd (balanced +/- pattern, scaled)."""
    m = size * size
    half = (m - 1) // 2
    base = np.array([1.0] * half + [-1.0] * half + [0.0]).reshape(size, size)
    return base * (sd * math.sqrt(m / (m - 1)))


class TestSsdlm:
    def test_constant_patch_is_zero(self):
        assert ssdlm(np.full((5, 5), 100)) == 0.0

    def test_hand_example(self):
        patch = np.zeros((3, 3))
        patch[2, 2] = 9
        assert ssdlm(patch) == pytest.approx(math.sqrt(8), abs=1e-12)

    def test_shift_invariance(self, rng):
        for _ in range(50):
            p = random_patch(rng)
            k = rng.uniform(-40, 40)
            assert ssdlm(p + k) == pytest.approx(ssdlm(p), abs=1e-9)

    def test_linear_under_positive_scaling(self, rng):
        for _ in range(50):
            p = random_patch(rng, dtype="float")
            k = rng.uniform(0.1, 4.0)
            assert ssdlm(p * k) == pytest.approx(k * ssdlm(p), rel=1e-9)

    def test_matches_brute_force(self, rng):
        for _ in range(100):
            p = random_patch(rng)
            assert ssdlm(p) == pytest.approx(ssdlm_brute(p), rel=1e-12)


class TestMoransI:
    def test_constant_patch_degenerate(self):
        with pytest.raises(DegeneratePatch):
            morans_i(np.full((3, 3), 7))

    def test_smooth_gradient_clusters(self):
        grad = np.array([[0, 0, 0], [128, 128, 128], [255, 255, 255]])
        assert morans_i(grad) > 0

    def test_checkerboard_disperses(self):
        checker = np.array([[0, 255, 0], [255, 0, 255], [0, 255, 0]])
        assert morans_i(checker) < 0

    def test_transpose_symmetry(self, rng):
        for _ in range(30):
            p = random_patch(rng)
            assert morans_i(p.T) == pytest.approx(morans_i(p), rel=1e-9)

    def test_matches_brute_force(self, rng):
        for _ in range(60):
            p = random_patch(rng)
            assert morans_i(p) == pytest.approx(morans_i_brute(p), rel=1e-9)


class TestAdjustedVariogram:
    def test_constant_patch_is_zero(self):
        assert adjusted_variogram(np.full((5, 5), 42)) == 0.0

    def test_two_element_sequence(self):
        assert adjusted_variogram(np.array([[0.0, 2.0]])) == pytest.approx(2.0)

    def test_three_element_sequence(self):
        got = adjusted_variogram(np.array([[0.0, 1.0, 2.0]]))
        assert got == pytest.approx(2.0 / 3.0, abs=1e-12)

    def test_nonnegative_and_zero_iff_constant(self, rng):
        for _ in range(50):
            p = random_patch(rng)
            v = adjusted_variogram(p)
            assert v >= 0.0
            assert (v == 0.0) == bool(np.all(p == p.ravel()[0]))

    def test_matches_brute_force(self, rng):
        for _ in range(60):
            p = random_patch(rng)
            assert adjusted_variogram(p) == pytest.approx(
                adjusted_variogram_brute(p), rel=1e-10)

    def test_euclidean_variant_matches_brute_force(self, rng):
        for _ in range(30):
            p = random_patch(rng)
            got = adjusted_variogram(p, distance="euclidean")
            assert got == pytest.approx(
                adjusted_variogram_brute(p, mode="euclidean"), rel=1e-10)

    def test_unknown_distance_rejected(self):
        with pytest.raises(InvalidParams):
            adjusted_variogram(np.ones((3, 3)), distance="chebyshev")


class TestCssni:
    def test_constant_patch_is_zero(self):
        assert cssni(np.full((7, 7), 13)) == 0.0

    def test_two_by_two_example(self):
        assert cssni(np.array([[0, 1], [0, 1]])) == 4.0

    def test_shift_invariance(self, rng):
        for _ in range(50):
            p = random_patch(rng)
            assert cssni(p + 17.0) == pytest.approx(cssni(p), rel=1e-12)

    def test_quadratic_under_positive_scaling(self, rng):
        for _ in range(50):
            p = random_patch(rng, dtype="float")
            k = rng.uniform(0.1, 4.0)
            assert cssni(p * k) == pytest.approx(k * k * cssni(p), rel=1e-9)

    def test_zero_iff_constant(self, rng):
        for _ in range(50):
            p = random_patch(rng)
            assert (cssni(p) == 0.0) == bool(np.all(p == p.ravel()[0]))

    def test_matches_brute_force(self, rng):
        for _ in range(60):
            p = random_patch(rng)
            assert cssni(p) == pytest.approx(cssni_brute(p), rel=1e-12)


class TestNavNormalized:
    def test_constant_patch_degenerate(self):
        with pytest.raises(DegeneratePatch):
            nav_normalized(np.full((5, 5), 9))

    def test_two_element_sequence(self):
        assert nav_normalized(np.array([[0.0, 2.0]])) == pytest.approx(2.0)

    def test_scales_linearly(self, rng):
        for _ in range(30):
            p = random_patch(rng, dtype="float")
            k = rng.uniform(0.5, 3.0)
            assert nav_normalized(p * k) == pytest.approx(
                k * nav_normalized(p), rel=1e-9)


class TestCalibrateLb:
    def test_constant_patches_give_zero(self):
        assert calibrate_lb([np.full((5, 5), 80)] * 4 ) == 0.0

    def test_known_sample(self):
        patches = [patch_with_sd(1.0), patch_with_sd(1.0),
                   patch_with_sd(1.0), patch_with_sd(3.0)]
        expected = 1.5 + 3.0 * math.sqrt(0.75)
        assert calibrate_lb(patches) == pytest.approx(expected, abs=1e-9)

    def test_single_patch_rejected(self):
        with pytest.raises(InsufficientSamples):
            calibrate_lb([np.ones((5, 5))])

    def test_shipped_default(self):
        assert DEFAULT_LOWER_BOUND == 4.23


class TestGlcmRelation:
    def test_ssdlm_anticorrelates_with_glcm_homogeneity(self, rng):
        # noise amplitude sweeps from near-flat to strongly textured
        sds, homs = [], []
        for _ in range(200):
            amp = rng.uniform(0.0, 60.0)
            p = np.clip(128 + rng.normal(0, max(amp, 1e-3), (7, 7)), 0, 255)
            sds.append(ssdlm(p))
            homs.append(glcm_homogeneity(p))
        rho, _ = spearmanr(sds, homs)
        assert rho < 0


class TestThresholds:
    def test_defaults(self):
        t = SpatialThresholds()
        assert t.lb == 4.23 and t.patch_size == 5

    @pytest.mark.parametrize("kwargs", [
        {"lb": -0.5},
        {"nav": 10.5},
        {"nav": -0.1},
        {"randomness": 1.5},
        {"patch_size": 4},
        {"patch_size": 13},
    ])
    def test_invalid_rejected(self, kwargs):
        with pytest.raises(InvalidParams):
            SpatialThresholds(**kwargs)


class TestExtractPatch:
    def test_interior(self):
        img = np.arange(25).reshape(5, 5)
        patch = extract_patch(img, 2, 2, 3)
        assert patch.tolist() == [[6, 7, 8], [11, 12, 13], [16, 17, 18]]

    def test_corner_replicates(self):
        img = np.arange(9).reshape(3, 3)
        patch = extract_patch(img, 0, 0, 3)
        assert patch.tolist() == [[0, 0, 1], [0, 0, 1], [3, 3, 4]]

    def test_even_size_rejected(self):
        with pytest.raises(InvalidParams):
            extract_patch(np.ones((5, 5)), 2, 2, 4)
