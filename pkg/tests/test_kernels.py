"""The compiled kernels and the numpy fallback compute the same things."""

import os
import subprocess
import sys

import numpy as np
import pytest

from nrange import _pykernels as py
from nrange import kernels
from nrange.matrixops import random_hermitian, random_matrix

try:
    from nrange import _ckernels as cy
except ImportError:  # extension not built
    cy = None

BACKENDS = [py] if cy is None else [py, cy]


@pytest.fixture(params=BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def impl(request):
    return request.param


def test_jacobi(impl):
    rng = np.random.default_rng(0)
    for n in (1, 3, 8, 20):
        h = random_hermitian(n, rng)
        np.testing.assert_allclose(impl.jacobi_eigvalsh(h), np.linalg.eigvalsh(h)[::-1], atol=1e-12 * n)


def test_jacobi_tiny_entries(impl):
    h = np.diag([1.0, 2.0, 3.0]).astype(complex)
    h[0, 1], h[1, 0] = 1e-310, 1e-310
    np.testing.assert_allclose(impl.jacobi_eigvalsh(h), [3, 2, 1])


def test_rotated_eigvalsh(impl):
    t = random_matrix(5, np.random.default_rng(1))
    th = np.linspace(0, 6, 17)
    out = impl.rotated_eigvalsh(t, th)
    for row, theta in zip(out, th):
        z = np.exp(1j * theta) * t
        np.testing.assert_allclose(row, np.linalg.eigvalsh((z + z.conj().T) / 2)[::-1], atol=1e-13)


def test_knapsack(impl):
    atoms = np.array([1, 1j, -1, -1j])
    w = np.full(4, 0.25)
    g = impl.knapsack_support(atoms, w, np.array([0.0, np.pi / 4]), 0.5)
    np.testing.assert_allclose(g, [0.5, np.sqrt(2) / 2], atol=1e-15)


def test_halfplane_violation(impl):
    th = np.linspace(0, 2 * np.pi, 8, endpoint=False)
    g = np.ones(8)
    pts = np.array([0j, 2 + 0j, 1j])
    v = impl.halfplane_violation(pts, th, g)
    np.testing.assert_allclose(v, [-1.0, 1.0, 0.0], atol=1e-15)


def test_polygon_distance(impl):
    sq = np.array([0, 1, 1 + 1j, 1j])
    pts = np.array([0.5 + 0.5j, 2 + 0.5j, -1 - 1j, 1 + 0.5j])
    np.testing.assert_allclose(impl.polygon_distance(pts, sq), [0, 1, np.sqrt(2), 0], atol=1e-15)


@pytest.mark.skipif(cy is None, reason="extension not built")
def test_backends_agree_on_random_inputs():
    rng = np.random.default_rng(3)
    atoms = rng.normal(size=6) + 1j * rng.normal(size=6)
    w = rng.dirichlet(np.ones(6))
    th = rng.uniform(0, 2 * np.pi, 100)
    np.testing.assert_allclose(cy.knapsack_support(atoms, w, th, 0.3), py.knapsack_support(atoms, w, th, 0.3), atol=1e-14)
    pts = rng.normal(size=300) + 1j * rng.normal(size=300)
    g = rng.uniform(0.5, 2, 100)
    np.testing.assert_allclose(cy.halfplane_violation(pts, th, g), py.halfplane_violation(pts, th, g), atol=1e-14)
    poly = np.exp(1j * np.linspace(0, 2 * np.pi, 9, endpoint=False))
    np.testing.assert_allclose(cy.polygon_distance(pts, poly), py.polygon_distance(pts, poly), atol=1e-14)


def test_pure_python_switch():
    env = dict(os.environ, NRANGE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import nrange; print(nrange.BACKEND)"], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "python"


def test_selected_backend():
    assert kernels.BACKEND in ("cython", "python")
    if cy is not None and os.environ.get("NRANGE_PURE_PYTHON", "") in ("", "0"):
        assert kernels.BACKEND == "cython"
