from fractions import Fraction as F

import numpy as np
import pytest

from nrange.convexgeom import points_inside, uniform_thetas
from nrange.eigfun import StepFunction, pairing_integral
from nrange.matrixops import random_matrix
from nrange.oracle import (
    OracleError,
    grid_sweep_supports,
    permutation_pairing_oracle,
    sample_orbit_cloud,
    sample_projection_cloud,
)
from nrange.range_engine import WeightSpec, compute_range, normal_range_exact
from nrange.spectral import SpectralModel


class TestProjectionCloud:
    def test_identity(self):
        cloud = sample_projection_cloud(np.eye(4), 2, 500, seed=1)
        np.testing.assert_allclose(cloud.points, 1.0, atol=1e-12)

    def test_diag_one_zero(self):
        # tau(TP) / alpha = |v_1|^2 for a unit vector v
        cloud = sample_projection_cloud(np.diag([1.0, 0.0]), 1, 5000, seed=2)
        assert cloud.points.real.min() >= -1e-12 and cloud.points.real.max() <= 1 + 1e-12
        assert np.abs(cloud.points.imag).max() <= 1e-12

    def test_normal_square(self):
        cloud = sample_projection_cloud(np.diag([1, 1j, -1, -1j]), 2, 20000, seed=3)
        region = normal_range_exact([(1, 0.25), (1j, 0.25), (-1, 0.25), (-1j, 0.25)], 0.5)
        assert points_inside(region, cloud.points, 1e-9).all()

    def test_seeded(self):
        t = random_matrix(3, np.random.default_rng(0))
        a = sample_projection_cloud(t, 1, 25000, seed=9)
        b = sample_projection_cloud(t, 1, 25000, seed=9)
        assert np.array_equal(a.points, b.points)
        assert a.sample_count == 25000 and len(a.points) == 25000

    def test_bad_rank(self):
        with pytest.raises(OracleError):
            sample_projection_cloud(np.eye(3), 0, 10)

    def test_inside_matrix_range(self):
        t = random_matrix(4, np.random.default_rng(4))
        region = compute_range(SpectralModel.from_matrix(t), WeightSpec.from_alpha(0.5)).region
        cloud = sample_projection_cloud(t, 2, 20000, seed=5)
        assert points_inside(region, cloud.points, 1e-8).all()


class TestOrbitCloud:
    def test_identity_weight(self):
        t = random_matrix(3, np.random.default_rng(1))
        cloud = sample_orbit_cloud(t, np.eye(3), 200, seed=0)
        np.testing.assert_allclose(cloud.points, np.trace(t) / 3, atol=1e-12)

    def test_su2_interval(self):
        d = np.diag([1.0, -1.0])
        pts = sample_orbit_cloud(d, d, 20000, seed=2).points
        assert pts.real.min() >= -1 - 1e-12 and pts.real.max() <= 1 + 1e-12
        assert pts.real.min() < -0.99 and pts.real.max() > 0.99

    def test_inside_step_weight_range(self):
        rng = np.random.default_rng(6)
        t = random_matrix(4, rng)
        c = np.diag([2.0, 1.0, 0.5, -1.0])
        w = WeightSpec.from_step(StepFunction.equal_pieces([2.0, 1.0, 0.5, -1.0]))
        region = compute_range(SpectralModel.from_matrix(t), w).region
        cloud = sample_orbit_cloud(t, c, 20000, seed=7)
        assert points_inside(region, cloud.points, 1e-8).all()

    def test_rejects_non_hermitian(self):
        with pytest.raises(OracleError):
            sample_orbit_cloud(np.eye(2), np.array([[0, 1], [0, 0]]), 10)


class TestPermutationOracle:
    def test_two(self):
        assert permutation_pairing_oracle([F(1), F(0)], [F(1), F(0)]) == (F(1, 2), F(0))

    def test_constant(self):
        hi, lo = permutation_pairing_oracle([F(3)] * 4, [F(1), F(5), F(2), F(0)])
        assert hi == lo == F(3 * 8, 4)

    def test_matches_pairing(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            f, g = rng.normal(size=6), rng.normal(size=6)
            hi, lo = permutation_pairing_oracle(f, g)
            fs = StepFunction.equal_pieces(np.sort(f)[::-1])
            gs = StepFunction.equal_pieces(np.sort(g)[::-1])
            assert hi == pytest.approx(pairing_integral(fs, gs), abs=1e-12)
            assert lo == pytest.approx(pairing_integral(fs, gs, reversed=True), abs=1e-12)

    def test_length_cap(self):
        with pytest.raises(OracleError):
            permutation_pairing_oracle([1] * 9, [1] * 9)


def test_grid_sweep_sharpens_support():
    t = random_matrix(2, np.random.default_rng(3))
    th = uniform_thetas(90)
    report = compute_range(SpectralModel.from_matrix(t), WeightSpec.from_alpha(0.5), directions=90)
    swept = grid_sweep_supports(t, th, points_per_axis=200)
    g = report.region.support.values
    assert np.all(swept <= g + 1e-12)
    assert np.max(g - swept) <= 1e-3


def test_support_attained_by_eigenprojection():
    # the projection onto the top-k eigenvectors of Re(e^{i theta} T) is a witness for g(theta)
    for seed in range(10):
        t = random_matrix(5, np.random.default_rng(seed))
        report = compute_range(SpectralModel.from_matrix(t), WeightSpec.from_alpha(0.4))
        s = report.region.support
        for theta, g in zip(s.thetas[::45], s.values[::45]):
            z = np.exp(1j * theta) * t
            _, vecs = np.linalg.eigh((z + z.conj().T) / 2)
            v = vecs[:, -2:]
            point = np.trace(t @ v @ v.conj().T) / 2
            assert (np.exp(1j * theta) * point).real == pytest.approx(g, abs=1e-12)
            assert points_inside(report.region, np.array([point]), 1e-9)[0]
