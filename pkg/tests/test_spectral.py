import math

import numpy as np
import pytest

from nrange.eigfun import StepFunction, pairing_integral
from nrange.spectral import (
    ModelError,
    RealDistribution,
    SpectralModel,
    quantile_step,
    real_part_distribution,
    semicircle_tail,
    semicircle_tail_inverse,
)

SQRT2 = math.sqrt(2)


class TestQuantileStep:
    def test_atomic_is_exact(self):
        f = quantile_step(RealDistribution.atomic([1.0, -1.0], [0.5, 0.5]), resolution=7)
        assert f == StepFunction([0.0, 0.5, 1.0], [1.0, -1.0])

    def test_atomic_merges_and_sorts(self):
        f = quantile_step(RealDistribution.atomic([0.0, 2.0, 0.0], [0.25, 0.5, 0.25]))
        assert list(f.values) == [2.0, 0.0]
        assert f.integral() == pytest.approx(1.0, abs=1e-15)

    def test_cosine_pushforward(self):
        # P(cos s > t) for s uniform on [-pi, pi] is arccos(t)/pi, whose inverse is cos(pi s)
        n = 512
        f = quantile_step(RealDistribution("cosine_pushforward"), n)
        mids = (np.arange(n) + 0.5) / n
        np.testing.assert_allclose(f.values, np.cos(np.pi * mids), atol=1e-15)
        t = f.values[::37]
        np.testing.assert_allclose(np.arccos(t) / np.pi, mids[::37], atol=1e-12)

    def test_linear_tucci(self):
        n = 64
        f = quantile_step(RealDistribution("linear_tucci"), n)
        mids = (np.arange(n) + 0.5) / n
        np.testing.assert_allclose(f.values, 0.5 * (1 - 2 * mids), atol=1e-15)

    @pytest.mark.parametrize("kind", ["cosine_pushforward", "linear_tucci", "semicircle"])
    def test_sorted(self, kind):
        d = RealDistribution(kind, variance=0.7) if kind == "semicircle" else RealDistribution(kind)
        assert quantile_step(d, 300).sorted

    def test_refinement_shrinks(self):
        d = RealDistribution("semicircle", variance=0.5)
        w = StepFunction([0.0, 0.3, 1.0], [2.0, 0.5])
        vals = [float(pairing_integral(quantile_step(d, 2**k), w)) for k in range(5, 13)]
        diffs = np.abs(np.diff(vals))
        assert np.all(diffs[1:] < diffs[:-1])

    def test_bad_resolution(self):
        with pytest.raises(ValueError):
            quantile_step(RealDistribution("linear_tucci"), 0)


class TestSemicircle:
    def test_endpoints(self):
        assert abs(semicircle_tail(SQRT2)) <= 1e-14
        assert abs(semicircle_tail(-SQRT2) - 1) <= 1e-14

    def test_decreasing(self):
        y = np.linspace(-SQRT2, SQRT2, 1000)
        assert np.all(np.diff(semicircle_tail(y)) < 0)

    def test_inverse(self):
        y = np.linspace(-SQRT2, SQRT2, 401)[1:-1]
        np.testing.assert_allclose(semicircle_tail_inverse(semicircle_tail(y)), y, atol=1e-10)

    def test_density_mass(self):
        # f is the tail of the density sqrt(2 - x^2)/pi
        x = np.linspace(0.3, SQRT2, 200001)
        dens = np.sqrt(np.maximum(2 - x * x, 0)) / np.pi
        mass = np.sum((dens[1:] + dens[:-1]) / 2 * np.diff(x))
        assert mass == pytest.approx(float(semicircle_tail(0.3)), abs=1e-6)

    def test_median(self):
        assert abs(semicircle_tail_inverse(0.5)) <= 1e-12


class TestRealPartDistribution:
    def test_atomic_rotation(self):
        d = real_part_distribution(SpectralModel.from_atoms([1j], [1.0]), 0.0)
        assert d.atoms == (0.0,) and d.weights == (1.0,)

    def test_matrix_negation(self):
        d = real_part_distribution(SpectralModel.from_matrix(np.diag([1.0, -1.0])), math.pi)
        f = quantile_step(d)
        np.testing.assert_allclose(f.values, [1.0, -1.0], atol=1e-15)
        np.testing.assert_allclose(f.lengths, [0.5, 0.5])

    def test_elliptic_quarter_pi(self):
        m = SpectralModel.named_model("elliptic", psi=math.pi / 4)
        for theta in np.linspace(0, 2 * math.pi, 9):
            d = real_part_distribution(m, theta)
            assert d.kind == "semicircle"
            assert math.sqrt(d.variance) == pytest.approx(1 / SQRT2, abs=1e-15)

    @pytest.mark.parametrize("name", ["haar_unitary", "circular", "tucci", "dt_quasinilpotent"])
    def test_rotation_invariant_models(self, name):
        m = SpectralModel.named_model(name)
        laws = {real_part_distribution(m, t) for t in np.linspace(0, 6, 13)}
        assert len(laws) == 1

    def test_circular_convention(self):
        # Re(Z) = X / sqrt(2) for X of variance 1, supported on [-sqrt 2, sqrt 2]
        d = real_part_distribution(SpectralModel.named_model("circular"), 0.3)
        assert d.variance == 0.5
        assert float(d.quantile(0.0)) == pytest.approx(SQRT2, abs=1e-11)

    def test_dt_is_half_semicircle(self):
        d = real_part_distribution(SpectralModel.named_model("dt_quasinilpotent"), 0.0)
        assert float(d.quantile(0.0)) == pytest.approx(1.0, abs=1e-11)

    def test_atomic_integral_is_trace(self):
        rng = np.random.default_rng(3)
        atoms = rng.normal(size=5) + 1j * rng.normal(size=5)
        w = rng.dirichlet(np.ones(5))
        m = SpectralModel.from_atoms(atoms, w)
        for theta in (0.0, 1.1, 4.0):
            f = quantile_step(real_part_distribution(m, theta))
            expected = float(np.dot(w, (np.exp(1j * theta) * atoms).real))
            assert f.integral() == pytest.approx(expected, abs=1e-14)


class TestSpectralModel:
    def test_weights_must_sum_to_one(self):
        with pytest.raises(ModelError):
            SpectralModel.from_atoms([1, 2], [0.5, 0.6])

    def test_elliptic_needs_psi(self):
        with pytest.raises(ModelError):
            SpectralModel.named_model("elliptic", psi=2.0)
        with pytest.raises(ModelError):
            SpectralModel.named_model("elliptic")

    def test_unknown_name(self):
        with pytest.raises(ModelError):
            SpectralModel.named_model("banana")

    @pytest.mark.parametrize(
        "model",
        [
            SpectralModel.from_matrix(np.array([[1, 2j], [0.5, -1]])),
            SpectralModel.from_atoms([1, 1j], [0.25, 0.75]),
            SpectralModel.named_model("elliptic", psi=0.4),
        ],
    )
    def test_json_round_trip(self, model):
        back = SpectralModel.from_dict(model.to_dict())
        assert back.digest() == model.digest()

    def test_bad_json(self):
        with pytest.raises(ModelError):
            SpectralModel.from_dict({"kind": "matrix"})
        with pytest.raises(ModelError):
            SpectralModel.from_dict({"atoms": []})

    def test_selfadjoint_detection(self):
        assert SpectralModel.from_matrix(np.array([[1, 1j], [-1j, 0]])).is_selfadjoint()
        assert not SpectralModel.from_matrix(np.array([[0, 1], [0, 0]])).is_selfadjoint()
        assert SpectralModel.from_atoms([1, -2 + 1e-14j], [0.5, 0.5]).is_selfadjoint()
