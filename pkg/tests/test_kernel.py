"""Cross distances, percentile bandwidth, duo and merged kernels."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from duoembed.data_model import DataMatrix
from duoembed.errors import DegenerateError, InsufficientSamples, ShapeError
from duoembed.kernel import (
    Bandwidth,
    BandwidthSource,
    DistanceMatrix,
    auto_omega,
    build_duo_kernel,
    cross_sq_distances,
    merged_kernel,
    select_bandwidth,
)
from duoembed.simulation import sample_setting1

small_matrices = arrays(
    np.float64,
    st.tuples(st.integers(2, 6), st.integers(1, 5)),
    elements=st.floats(-100, 100, allow_nan=False, allow_infinity=False),
)


def _pair(draw_x, draw_y):
    return DataMatrix(draw_x), DataMatrix(draw_y)


class TestCrossSqDistances:
    def test_three_four_five(self):
        x = DataMatrix(np.array([[0.0, 0.0], [9.0, 9.0]]))
        y = DataMatrix(np.array([[3.0, 4.0], [9.0, 9.0]]))
        d = cross_sq_distances(x, y)
        assert d.d[0, 0] == 25.0
        assert d.d[1, 1] == 0.0

    def test_feature_mismatch(self):
        with pytest.raises(ShapeError):
            cross_sq_distances(DataMatrix(np.ones((2, 2))), DataMatrix(np.ones((2, 3))))

    @given(small_matrices, small_matrices)
    def test_swap_is_bit_exact_transpose(self, a, b):
        if a.shape[1] != b.shape[1]:
            b = b[:, : a.shape[1]]
            if b.shape[1] < a.shape[1]:
                a = a[:, : b.shape[1]]
        x, y = DataMatrix(a), DataMatrix(b)
        d_xy = cross_sq_distances(x, y).d
        d_yx = cross_sq_distances(y, x).d
        assert np.array_equal(d_xy, d_yx.T)

    @given(small_matrices)
    def test_matches_direct_formula(self, a):
        x = DataMatrix(a)
        d = cross_sq_distances(x, x).d
        direct = ((a[:, None, :] - a[None, :, :]) ** 2).sum(axis=2)
        np.testing.assert_allclose(d, direct, atol=1e-6 * max(1.0, direct.max()))


class TestSelectBandwidth:
    def test_order_statistic(self):
        d = DistanceMatrix(np.array([[1.0, 2.0], [3.0, 4.0]]))
        assert select_bandwidth(d, 0.5).h == 2.0

    def test_constant_distances(self):
        d = DistanceMatrix(np.full((2, 2), 5.0))
        assert select_bandwidth(d, 0.9).h == 5.0

    def test_zero_fallback_to_smallest_positive(self):
        d = DistanceMatrix(np.array([[0.0, 0.0], [0.0, 3.0]]))
        assert select_bandwidth(d, 0.5).h == 3.0

    def test_all_zero_degenerate(self):
        d = DistanceMatrix(np.zeros((2, 2)))
        with pytest.raises(DegenerateError):
            select_bandwidth(d, 0.5)

    def test_omega_out_of_range(self):
        d = DistanceMatrix(np.ones((2, 2)))
        for bad in (0.0, 1.0, -0.2, 1.5):
            with pytest.raises(ShapeError):
                select_bandwidth(d, bad)

    @given(
        arrays(np.float64, st.tuples(st.integers(2, 6), st.integers(2, 6)),
               elements=st.floats(0, 100, allow_nan=False)),
        st.floats(0.01, 0.99),
    )
    def test_empirical_cdf_characterization(self, dvals, omega):
        d = DistanceMatrix(dvals)
        flat = np.sort(dvals.ravel())
        if flat[-1] == 0.0:
            return  # degenerate case covered separately
        h = select_bandwidth(d, omega).h
        m = flat.size
        cdf = lambda t: np.count_nonzero(flat <= t) / m
        if h != flat[math.ceil(omega * m) - 1]:  # zero-fallback engaged
            assert flat[math.ceil(omega * m) - 1] == 0.0
            assert h == flat[flat > 0][0]
        else:
            assert cdf(h) >= omega
            below = flat[flat < h]
            if below.size:
                assert cdf(below[-1]) < omega

    @given(
        arrays(np.float64, st.tuples(st.integers(2, 6), st.integers(2, 6)),
               elements=st.floats(0.001, 100, allow_nan=False)),
        st.floats(0.01, 0.99),
        st.floats(0.01, 0.99),
    )
    def test_monotone_in_omega(self, dvals, w1, w2):
        d = DistanceMatrix(dvals)
        lo, hi = sorted((w1, w2))
        assert select_bandwidth(d, lo).h <= select_bandwidth(d, hi).h

    def test_noise_shrinks_bandwidth_deviation(self):
        # oracle: bandwidth on the clean signals; the noisy bandwidth ratio
        # must approach 1 as the noise level falls
        n, p = 200, 50
        devs = []
        for s2 in (1.0, 0.01):
            clean = sample_setting1(n, n, p, 0.0, sigma1_sq=0.0, sigma2_sq=0.0, seed=3)
            noisy = sample_setting1(n, n, p, 0.0, sigma1_sq=s2, sigma2_sq=s2, seed=3)
            h0 = select_bandwidth(cross_sq_distances(clean[0], clean[1]), 0.5).h
            h = select_bandwidth(cross_sq_distances(noisy[0], noisy[1]), 0.5).h
            devs.append(abs(h / h0 - 1.0))
        assert devs[1] < devs[0]


class TestBuildDuoKernel:
    def test_values(self):
        d = DistanceMatrix(np.array([[0.0, 2.0], [20.0, 2.0]]))
        k = build_duo_kernel(d, Bandwidth(h=2.0, omega=0.5))
        assert k.k[0, 0] == 1.0
        assert k.k[0, 1] == pytest.approx(math.exp(-1.0))
        assert k.k[1, 0] == pytest.approx(math.exp(-10.0))
        assert k.k.min() > 0.0

    def test_entries_in_unit_interval(self):
        rng = np.random.default_rng(0)
        d = DistanceMatrix(rng.uniform(0, 50, (10, 7)))
        k = build_duo_kernel(d, select_bandwidth(d, 0.5))
        assert k.k.min() > 0.0 and k.k.max() <= 1.0
        assert np.all((k.k == 1.0) == (d.d == 0.0))

    @given(st.floats(0.01, 10), st.floats(0.01, 10), st.floats(0.1, 5))
    def test_strictly_decreasing_in_distance(self, d1, d2, h):
        lo, hi = sorted((d1, d2))
        if lo == hi:
            return
        d = DistanceMatrix(np.array([[lo, hi], [lo, hi]]))
        k = build_duo_kernel(d, Bandwidth(h=h, omega=0.5))
        assert k.k[0, 0] > k.k[0, 1]


class TestMergedKernel:
    def test_two_samples(self):
        # duplicated rows at squared distance 1: the median off-diagonal
        # distance is 1, so q_n = 1
        f, bw = merged_kernel(
            DataMatrix(np.array([[0.0], [0.0]])), DataMatrix(np.array([[1.0], [1.0]]))
        )
        assert bw.h == 1.0
        assert f[0, 2] == pytest.approx(math.exp(-1.0))
        assert np.all(np.diag(f) == 1.0)

    @given(small_matrices)
    def test_symmetric_unit_diagonal(self, a):
        x = DataMatrix(a)
        y = DataMatrix(a + 1.0)
        f, _ = merged_kernel(x, y, 0.5)
        assert np.array_equal(f, f.T)
        assert np.all(np.diag(f) == 1.0)

    def test_rotation_invariance(self):
        rng = np.random.default_rng(7)
        a = rng.standard_normal((8, 5))
        b = rng.standard_normal((9, 5))
        q, _ = np.linalg.qr(rng.standard_normal((5, 5)))
        d0 = cross_sq_distances(DataMatrix(a), DataMatrix(b))
        d1 = cross_sq_distances(DataMatrix(a @ q), DataMatrix(b @ q))
        k0 = build_duo_kernel(d0, select_bandwidth(d0, 0.5))
        k1 = build_duo_kernel(d1, select_bandwidth(d1, 0.5))
        assert np.max(np.abs(k0.k - k1.k)) <= 1e-10


class TestAutoOmega:
    def _pair(self, n=12, seed=0):
        rng = np.random.default_rng(seed)
        return DataMatrix(rng.standard_normal((n, 4))), DataMatrix(rng.standard_normal((n, 4)))

    def test_singleton_grid(self):
        x, y = self._pair()
        bw = auto_omega(x, y, [0.3], r=2)
        assert bw.omega == 0.3
        assert bw.source is BandwidthSource.RESAMPLED

    def test_deterministic_under_seed(self):
        x, y = self._pair()
        a = auto_omega(x, y, [0.2, 0.5, 0.8], r=2, b=3, seed=11)
        b = auto_omega(x, y, [0.2, 0.5, 0.8], r=2, b=3, seed=11)
        assert (a.h, a.omega) == (b.h, b.omega)

    def test_diverging_score_tie_breaks_small(self):
        # near rank-1 pair: every omega scores infinity, smallest omega wins
        rng = np.random.default_rng(1)
        base = np.ones((10, 3)) + 1e-9 * rng.standard_normal((10, 3))
        bw = auto_omega(DataMatrix(base), DataMatrix(base + 0.5), [0.4, 0.6], r=1)
        assert bw.omega == 0.4

    def test_insufficient_samples(self):
        x = DataMatrix(np.random.default_rng(0).standard_normal((3, 2)))
        with pytest.raises(InsufficientSamples):
            auto_omega(x, x, [0.5], r=1)

    def test_bad_grid(self):
        x, y = self._pair()
        with pytest.raises(ShapeError):
            auto_omega(x, y, [], r=1)
        with pytest.raises(ShapeError):
            auto_omega(x, y, [1.5], r=1)
