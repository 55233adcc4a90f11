"""Smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import pyqhsq


def test_kernel_values():
    spec = pyqhsq.KernelSpec(1.0, 1.0, 0.05)
    assert pyqhsq.se_kernel(0.0, 0.0, spec) == pytest.approx(1.0)
    assert pyqhsq.se_kernel(0.0, math.sqrt(2.0), spec) == pytest.approx(math.exp(-1.0))
    assert pyqhsq.spectral_density(0.0, spec) == pytest.approx(math.sqrt(2.0 * math.pi))


def test_basis_and_kernel_approx():
    assert pyqhsq.eigenvalue(1, math.pi, 4) == pytest.approx(0.25)
    assert pyqhsq.eigenfunction(1, 0.0, math.pi, 4) == pytest.approx(1.0 / math.sqrt(math.pi))
    spec = pyqhsq.KernelSpec(1.0, 1.0, 0.0)
    wide = pyqhsq.kernel_approx(0.0, 1.0, 5.0 * math.pi, 64, spec)
    assert wide == pytest.approx(pyqhsq.se_kernel(0.0, 1.0, spec), abs=1e-3)


def test_classical_quadratures_agree_with_numpy():
    spec = pyqhsq.KernelSpec(1.0, 1.0, 0.05)
    x = np.asarray(pyqhsq.evaluation_points(8, math.pi))
    y = 1.0 + np.sin(x)

    g = pyqhsq.gpq_full(x, y, spec, -math.pi, math.pi)
    assert abs(g["mean"] - 2.0 * math.pi) < 0.2
    assert g["variance"] > 0.0

    h = pyqhsq.hsq(x, y, math.pi, 4, spec, -math.pi, math.pi)
    d = pyqhsq.build_design(x, math.pi, 4, spec, -math.pi, math.pi)

    # cross-check the low-rank mean against a direct numpy solve
    X, X_mu = np.asarray(d["X"]), np.asarray(d["X_mu"])
    A = X.T @ X + spec.sigma**2 * np.eye(4)
    mean_np = X_mu @ np.linalg.solve(A, X.T @ y)
    assert h["mean"] == pytest.approx(mean_np, abs=1e-10)

    s = pyqhsq.svd_quadrature(X, X_mu, y, spec, 4)
    assert s["mean"] == pytest.approx(h["mean"], abs=1e-10)
    assert s["variance"] == pytest.approx(h["variance"], abs=1e-10)


def test_quantum_estimate_tracks_the_classical_truncation():
    spec = pyqhsq.KernelSpec(1.0, 1.0, 0.05)
    x = np.asarray(pyqhsq.evaluation_points(8, math.pi))
    y = 1.0 + np.sin(x)
    d = pyqhsq.build_design(x, math.pi, 4, spec, -math.pi, math.pi)
    for rank in (1, 4):
        q = pyqhsq.qhsq_estimate(x, y, math.pi, 4, spec, -math.pi, math.pi,
                                 rank, 10, 0.15, shots=0)
        s = pyqhsq.svd_quadrature(np.asarray(d["X"]), np.asarray(d["X_mu"]), y, spec, rank)
        assert q["mean"] == pytest.approx(s["mean"], abs=5e-3)
        assert q["variance"] == pytest.approx(s["variance"], abs=5e-3)


def test_qft_matches_numpy_ifft():
    rng = np.random.default_rng(5)
    v = rng.normal(size=8) + 1j * rng.normal(size=8)
    got = np.asarray(pyqhsq.qft(v))
    want = np.fft.ifft(v) * math.sqrt(8)
    assert np.abs(got - want).max() < 1e-10


def test_inner_product_tests():
    rng = np.random.default_rng(7)
    v1 = rng.normal(size=8)
    v2 = rng.normal(size=8)
    v1 /= np.linalg.norm(v1)
    v2 /= np.linalg.norm(v2)
    dot = float(v1 @ v2)
    assert 2.0 * pyqhsq.hadamard_test(v1, v2) - 1.0 == pytest.approx(dot, abs=1e-10)
    assert 2.0 * pyqhsq.swap_test(v1, v2) - 1.0 == pytest.approx(dot**2, abs=1e-10)


def test_errors_surface_as_python_exceptions():
    spec = pyqhsq.KernelSpec(1.0, 1.0, 0.05)
    with pytest.raises(ValueError):
        pyqhsq.eigenvalue(9, math.pi, 4)
    with pytest.raises(ValueError):
        pyqhsq.gpq_full(np.array([0.0]), np.array([]), spec, -1.0, 1.0)
