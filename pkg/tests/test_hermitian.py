from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from opmeans.errors import DomainError, NotHermitianError, NotPositiveDefiniteError
from opmeans.hermitian import (
    as_hermitian,
    as_spd,
    congruence,
    divided_differences,
    eigen_decompose,
    expm,
    frechet_apply,
    hermitian_basis,
    hs_norm,
    invm,
    invsqrtm,
    is_spd,
    logm,
    loewner_leq,
    loewner_matrix,
    operator_abs,
    powm,
    random_hermitian,
    random_spd,
    random_unitary,
    sqrtm,
)

seeds = st.integers(0, 2**32 - 1)
dims = st.integers(1, 6)


@given(seeds, dims, st.booleans())
def test_sqrt_squares_back(seed, n, cplx):
    A = random_spd(n, 50, seed, cplx)
    R = sqrtm(A)
    assert hs_norm(R @ R - A) <= 1e-12 * hs_norm(A)
    assert hs_norm(invsqrtm(A) @ R - np.eye(n)) <= 1e-10


@given(seeds, dims, st.booleans())
def test_log_exp_inverse(seed, n, cplx):
    A = random_spd(n, 50, seed, cplx)
    assert hs_norm(expm(logm(A)) - A) <= 1e-12 * (1 + hs_norm(A))


@given(seeds, dims, st.floats(-2, 2))
def test_power_law(seed, n, p):
    A = random_spd(n, 20, seed)
    assert hs_norm(powm(A, p) @ powm(A, 1 - p) - A) <= 1e-10 * (1 + hs_norm(A))


@given(seeds, st.integers(2, 6), st.floats(1, 1e4))
def test_random_spd_pins_condition(seed, n, cond):
    vals = np.linalg.eigvalsh(random_spd(n, cond, seed))
    assert vals[-1] == pytest.approx(1.0, rel=1e-10)
    assert vals[-1] / vals[0] == pytest.approx(cond, rel=1e-8)


def test_random_spd_reproducible():
    assert np.array_equal(random_spd(4, 10, 3), random_spd(4, 10, 3))
    assert not np.array_equal(random_spd(4, 10, 3), random_spd(4, 10, 4))


@given(seeds, dims, st.booleans())
def test_random_unitary(seed, n, cplx):
    Q = random_unitary(n, np.random.default_rng(seed), cplx)
    assert hs_norm(Q.conj().T @ Q - np.eye(n)) <= 1e-12


def test_validation_errors():
    with pytest.raises(NotHermitianError):
        as_hermitian([[1.0, 2.0], [0.0, 1.0]])
    with pytest.raises(NotPositiveDefiniteError):
        as_spd([[1.0, 0.0], [0.0, -1.0]])
    with pytest.raises(NotPositiveDefiniteError):
        as_spd(np.zeros((2, 2)))
    with pytest.raises(DomainError):
        as_spd([[np.nan, 0.0], [0.0, 1.0]])
    with pytest.raises(ValueError):
        as_spd(np.ones((2, 3)))
    with pytest.raises(DomainError):
        congruence(np.zeros((2, 2)), np.eye(2))
    assert not is_spd([[1.0, 0.0], [0.0, 0.0]])
    assert is_spd(np.eye(3))


def test_roundoff_asymmetry_is_removed():
    X = np.array([[2.0, 1.0], [1.0 + 1e-14, 2.0]])
    assert np.array_equal(as_hermitian(X), as_hermitian(X).T)


@given(seeds, dims)
def test_loewner_order(seed, n):
    rng = np.random.default_rng(seed)
    A = random_spd(n, 20, rng)
    Z = rng.standard_normal((n, n))
    assert loewner_leq(A, A + Z @ Z.T)
    assert loewner_leq(A, A)
    assert not loewner_leq(A + np.eye(n), A)


@given(seeds, dims, st.booleans())
def test_operator_abs(seed, n, cplx):
    rng = np.random.default_rng(seed)
    Z = rng.standard_normal((n, n)) + (1j * rng.standard_normal((n, n)) if cplx else 0)
    P = operator_abs(Z)
    assert hs_norm(P @ P - Z.conj().T @ Z) <= 1e-10 * (1 + hs_norm(Z) ** 2)


@pytest.mark.parametrize("cplx", [False, True])
@pytest.mark.parametrize("n", [1, 2, 5])
def test_hermitian_basis_is_orthonormal(n, cplx):
    B = hermitian_basis(n, cplx)
    assert B.shape[0] == (n * n if cplx else n * (n + 1) // 2)
    gram = np.einsum("aij,bji->ab", B, B)
    assert np.allclose(gram, np.eye(B.shape[0]), atol=1e-14)
    for E in B:
        assert np.allclose(E, E.conj().T)


@given(seeds, st.integers(2, 5))
def test_frechet_derivative_matches_finite_difference(seed, n):
    rng = np.random.default_rng(seed)
    A = random_spd(n, 10, rng)
    H = random_hermitian(n, rng)
    eig = eigen_decompose(A)
    L = loewner_matrix(eig.eigenvalues, np.sqrt, lambda x: 0.5 / np.sqrt(x))
    h = 1e-6
    fd = (sqrtm(A + h * H) - sqrtm(A - h * H)) / (2 * h)
    assert hs_norm(frechet_apply(eig, L, H) - fd) <= 1e-6


def test_divided_differences_close_pairs():
    x = np.array([1.0, 1.0 + 1e-12, 3.0])
    dd = divided_differences(x, np.log(x), 1 / x)
    ref = loewner_matrix(x, np.log, lambda t: 1 / t)
    assert np.allclose(dd, ref, rtol=1e-10)
    assert dd[0, 1] == pytest.approx(1.0, rel=1e-11)
    assert dd[0, 2] == pytest.approx(np.log(3) / 2)


def test_inverse():
    A = random_spd(4, 100, 0, True)
    assert hs_norm(A @ invm(A) - np.eye(4)) <= 1e-12
