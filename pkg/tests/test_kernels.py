"""The numba kernels and their numpy fallback must agree."""

from __future__ import annotations

import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from opmeans._kernels import _numba, _numpy

locations = arrays(float, st.integers(1, 8), elements=st.floats(0.01, 0.99))
points = arrays(float, st.integers(1, 20), elements=st.floats(1e-3, 1e3))


def weights_for(lam, seed):
    return np.random.default_rng(seed).dirichlet(np.ones(lam.size))


@given(locations, points, st.integers(0, 1000))
def test_generator_and_derivative_agree(lam, x, seed):
    w = weights_for(lam, seed)
    np.testing.assert_allclose(_numba.fmu(lam, w, x), _numpy.fmu(lam, w, x), rtol=1e-13)
    np.testing.assert_allclose(_numba.fmu_prime(lam, w, x), _numpy.fmu_prime(lam, w, x), rtol=1e-13)


@given(locations, arrays(float, st.integers(1, 6), elements=st.floats(0.05, 20)), st.integers(0, 1000))
def test_loewner_agree(lam, s, seed):
    w = weights_for(lam, seed)
    np.testing.assert_allclose(_numba.fmu_loewner(lam, w, s), _numpy.fmu_loewner(lam, w, s), rtol=1e-12)


@given(locations, points, st.integers(0, 1000))
def test_inverse_round_trip(lam, x, seed):
    w = weights_for(lam, seed)
    t = _numpy.fmu(lam, w, x)
    for impl in (_numba, _numpy):
        u = impl.fmu_inverse(lam, w, t.copy(), 1e-13)
        np.testing.assert_allclose(_numpy.fmu(lam, w, u), t, rtol=1e-11)


def test_inverse_exact_hit_keeps_root():
    # a Newton step landing exactly on the root must not be discarded
    lam = np.array([0.5])
    w = np.array([1.0])
    t = np.array([1.0])
    for impl in (_numba, _numpy):
        assert impl.fmu_inverse(lam, w, t.copy(), 1e-13)[0] == pytest.approx(1.0, rel=1e-13)


def test_potential_agree():
    lam = np.array([0.2, 0.5, 0.8])
    w = np.array([0.3, 0.4, 0.3])
    x = np.linspace(0.2, 2.6, 9)  # the range of f is (0, 2.675)
    a = _numba.g_potential(lam, w, x, 1e-11)
    b = _numpy.g_potential(lam, w, x, 1e-11)
    np.testing.assert_allclose(a, b, atol=1e-10)
    assert np.all(a >= -1e-12)
    assert _numba.g_potential(lam, w, np.array([1.0]), 1e-11)[0] == 0.0


def test_potential_outside_range_is_nan():
    lam = np.array([0.2, 0.5, 0.8])
    w = np.array([0.3, 0.4, 0.3])
    x = np.array([3.0, 1.5])
    for impl in (_numba, _numpy):
        out = impl.g_potential(lam, w, x, 1e-11)
        assert np.isnan(out[0]) and np.isfinite(out[1])


def test_backend_flag_selects_numpy():
    env = dict(os.environ, OPMEANS_BACKEND="numpy")
    out = subprocess.run([sys.executable, "-c", "import opmeans; print(opmeans.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
