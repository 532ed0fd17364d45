"""Dense Hermitian linear algebra on small positive definite matrices.

Matrices are plain ``numpy.ndarray`` values of shape ``(n, n)``, real or
complex.  Every spectral function goes through a full eigendecomposition, so
the routines here favour clarity over speed; the intended dimensions are
small (``n <= 64``).

Norms written ``||X||`` below are Hilbert-Schmidt (Frobenius) norms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    DomainError,
    EigenSolverError,
    NotHermitianError,
    NotPositiveDefiniteError,
)

#: relative asymmetry above which an input is rejected instead of repaired
HERMITIAN_TOL = 1e-8
#: relative definiteness threshold: min(eig) must exceed PD_EPS * max(eig)
PD_EPS = 1e-10


def hs_norm(X) -> float:
    """Hilbert-Schmidt norm ``sqrt(tr X*X)``."""
    return float(np.linalg.norm(X))


def dagger(X):
    return np.conj(np.swapaxes(X, -1, -2))


def symmetrize(X):
    """Return the Hermitian part ``(X + X*) / 2``."""
    return (X + dagger(X)) / 2


def _check_square(X, name):
    X = np.asarray(X)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got shape {X.shape}")
    if X.shape[0] == 0:
        raise ValueError(f"{name} must have positive dimension")
    if not np.all(np.isfinite(X)):
        raise DomainError(f"{name} has non-finite entries")
    if not np.iscomplexobj(X):
        X = X.astype(float)
    return X


def as_hermitian(X, name: str = "X") -> np.ndarray:
    """Validate ``X`` as Hermitian and return its symmetrized copy.

    Roundoff asymmetry up to ``HERMITIAN_TOL * ||X||`` is silently removed;
    anything larger raises :class:`NotHermitianError`.
    """
    X = _check_square(X, name)
    scale = hs_norm(X)
    asym = hs_norm(X - dagger(X)) / 2
    if asym > HERMITIAN_TOL * max(scale, np.finfo(float).tiny):
        raise NotHermitianError(
            f"{name} is not Hermitian: ||X - X*||/2 = {asym:.3e} "
            f"exceeds {HERMITIAN_TOL:g} * ||X|| = {HERMITIAN_TOL * scale:.3e}"
        )
    return symmetrize(X)


def as_spd(X, name: str = "X") -> np.ndarray:
    """Validate ``X`` as Hermitian positive definite; returns symmetrized copy."""
    X = as_hermitian(X, name)
    vals = np.linalg.eigvalsh(X)
    if vals[0] <= PD_EPS * max(vals[-1], 0.0) or vals[-1] <= 0:
        raise NotPositiveDefiniteError(
            f"{name} is not positive definite: eigenvalues span "
            f"[{vals[0]:.3e}, {vals[-1]:.3e}]"
        )
    return X


def is_spd(X) -> bool:
    try:
        as_spd(X)
    except (NotHermitianError, NotPositiveDefiniteError, DomainError):
        return False
    return True


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectral decomposition ``X = Q diag(eigenvalues) Q*`` with ascending eigenvalues."""

    eigenvalues: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return self.apply(lambda x: x)

    def apply(self, values_or_func) -> np.ndarray:
        """Form ``Q diag(v) Q*`` where ``v`` is given or ``func(eigenvalues)``."""
        if callable(values_or_func):
            vals = np.asarray(values_or_func(self.eigenvalues))
        else:
            vals = np.asarray(values_or_func)
        Q = self.vectors
        return symmetrize((Q * vals) @ dagger(Q))


def eigen_decompose(X) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix.

    Raises
    ------
    EigenSolverError
        If LAPACK fails to converge.
    """
    X = as_hermitian(X)
    try:
        vals, vecs = np.linalg.eigh(X)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise EigenSolverError(
            f"eigh did not converge for {X.shape[0]}x{X.shape[0]} input "
            f"with ||X|| = {hs_norm(X):.3e}: {exc}"
        ) from exc
    vals.flags.writeable = False
    vecs.flags.writeable = False
    return EigenDecomposition(vals, vecs)


def _spectral(X, spd: bool) -> EigenDecomposition:
    if isinstance(X, EigenDecomposition):
        return X
    if spd:
        X = as_spd(X)
    return eigen_decompose(X)


def matrix_function(X, func: Callable, *, spd: bool = True) -> np.ndarray:
    """Apply a scalar function through the spectral calculus.

    Parameters
    ----------
    X : (n, n) array or EigenDecomposition
        Positive definite input (Hermitian when ``spd=False``).
    func : callable
        Vectorized real function evaluated on the eigenvalues.

    Raises
    ------
    DomainError
        If ``func`` is non-finite at some eigenvalue.
    """
    eig = _spectral(X, spd)
    with np.errstate(all="ignore"):
        vals = np.asarray(func(eig.eigenvalues), dtype=float)
    bad = ~np.isfinite(vals)
    if bad.any():
        lam = eig.eigenvalues[np.argmax(bad)]
        raise DomainError(f"function is not finite at eigenvalue {lam!r}")
    return eig.apply(vals)


def sqrtm(X):
    return matrix_function(X, np.sqrt)


def invsqrtm(X):
    return matrix_function(X, lambda x: 1 / np.sqrt(x))


def logm(X):
    return matrix_function(X, np.log)


def expm(X):
    """Exponential of a Hermitian matrix (result is positive definite)."""
    return matrix_function(X, np.exp, spd=False)


def powm(X, p: float):
    return matrix_function(X, lambda x: x**p)


def invm(X):
    return matrix_function(X, lambda x: 1 / x)


def congruence(C, X) -> np.ndarray:
    """Return ``C X C*`` for an invertible ``C``."""
    C = _check_square(C, "C")
    X = as_hermitian(X)
    s = np.linalg.svd(C, compute_uv=False)
    if s[-1] <= 1e3 * np.finfo(float).eps * s[0] or s[0] == 0:
        ratio = s[-1] / s[0] if s[0] > 0 else 0.0
        raise DomainError(f"congruence matrix is singular (sigma_min/sigma_max = {ratio:.3e})")
    return symmetrize(C @ X @ dagger(C))


def operator_abs(Z) -> np.ndarray:
    """Absolute value ``|Z| = (Z* Z)^(1/2)`` computed from the SVD of ``Z``."""
    Z = _check_square(Z, "Z")
    _, s, Vh = np.linalg.svd(Z)
    V = dagger(Vh)
    return symmetrize((V * s) @ Vh)


def loewner_leq(X, Y, tol: float = 1e-9) -> bool:
    """Löwner comparison ``X <= Y`` up to ``tol * (1 + ||Y - X||)``."""
    X = as_hermitian(X, "X")
    Y = as_hermitian(Y, "Y")
    if X.shape != Y.shape:
        raise ValueError(f"shape mismatch {X.shape} vs {Y.shape}")
    D = Y - X
    return bool(np.linalg.eigvalsh(D)[0] >= -tol * (1 + hs_norm(D)))


def random_unitary(dim: int, rng: np.random.Generator, iscomplex: bool = False) -> np.ndarray:
    """Haar-distributed orthogonal/unitary matrix via QR of a Gaussian matrix."""
    Z = rng.standard_normal((dim, dim))
    if iscomplex:
        Z = (Z + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diagonal(R)
    return Q * (d / np.abs(d))


def random_spd(dim: int, condition: float = 10.0, seed=None, iscomplex: bool = False) -> np.ndarray:
    """Reproducible random positive definite matrix.

    The spectrum lies in ``[1/condition, 1]``: for ``dim >= 2`` both ends are
    attained, the remaining eigenvalues are log-uniform in between.
    Eigenvectors come from a unitarized Gaussian matrix.

    Parameters
    ----------
    dim : int
        Matrix size, at least 1.
    condition : float
        Target condition number, at least 1.
    seed : int, Generator or None
        Seed for :func:`numpy.random.default_rng`.
    """
    if dim < 1:
        raise ValueError("dim must be >= 1")
    if condition < 1:
        raise ValueError("condition must be >= 1")
    rng = np.random.default_rng(seed)
    if dim == 1:
        vals = np.ones(1)
    else:
        logs = rng.uniform(-np.log(condition), 0.0, size=dim)
        logs[0], logs[1] = -np.log(condition), 0.0
        vals = np.exp(logs)
    Q = random_unitary(dim, rng, iscomplex)
    return symmetrize((Q * vals) @ dagger(Q))


def random_hermitian(dim: int, rng: np.random.Generator, iscomplex: bool = False) -> np.ndarray:
    """Random Hermitian matrix with unit Hilbert-Schmidt norm."""
    H = rng.standard_normal((dim, dim))
    if iscomplex:
        H = H + 1j * rng.standard_normal((dim, dim))
    H = symmetrize(H)
    return H / hs_norm(H)


def loewner_matrix(vals, func: Callable, dfunc: Callable, rtol: float = 1e-7) -> np.ndarray:
    """First divided differences ``[f(a_i) - f(a_k)] / (a_i - a_k)``.

    Pairs closer than ``rtol`` (relative) use ``dfunc`` at the midpoint.
    """
    vals = np.asarray(vals, dtype=float)
    fv = np.asarray(func(vals), dtype=float)
    da = vals[:, None] - vals[None, :]
    df = fv[:, None] - fv[None, :]
    scale = np.maximum(np.abs(vals[:, None]), np.abs(vals[None, :]))
    close = np.abs(da) <= rtol * scale
    mid = (vals[:, None] + vals[None, :]) / 2
    out = np.empty_like(da)
    out[~close] = df[~close] / da[~close]
    out[close] = np.asarray(dfunc(mid[close]), dtype=float)
    return out


def divided_differences(vals, fvals, dvals, rtol: float = 1e-7) -> np.ndarray:
    """Loewner matrix from precomputed values ``f(a_i)`` and derivatives ``f'(a_i)``.

    Close pairs use the mean of the two derivatives, which is second-order
    accurate at the midpoint.
    """
    vals = np.asarray(vals, dtype=float)
    fvals = np.asarray(fvals, dtype=float)
    dvals = np.asarray(dvals, dtype=float)
    da = vals[:, None] - vals[None, :]
    scale = np.maximum(np.abs(vals[:, None]), np.abs(vals[None, :]))
    close = np.abs(da) <= rtol * scale
    with np.errstate(divide="ignore", invalid="ignore"):
        out = (fvals[:, None] - fvals[None, :]) / da
    dd = (dvals[:, None] + dvals[None, :]) / 2
    return np.where(close, dd, out)


def hermitian_basis(dim: int, iscomplex: bool) -> np.ndarray:
    """Orthonormal basis (trace inner product) of real symmetric or complex Hermitian matrices.

    Returns an array of shape ``(k, dim, dim)`` with ``k = dim(dim+1)/2`` in
    the real case and ``k = dim**2`` in the complex case.
    """
    dtype = complex if iscomplex else float
    out = []
    for i in range(dim):
        E = np.zeros((dim, dim), dtype=dtype)
        E[i, i] = 1
        out.append(E)
    r = 1 / np.sqrt(2)
    for i in range(dim):
        for k in range(i + 1, dim):
            E = np.zeros((dim, dim), dtype=dtype)
            E[i, k] = E[k, i] = r
            out.append(E)
            if iscomplex:
                F = np.zeros((dim, dim), dtype=dtype)
                F[i, k] = -1j * r
                F[k, i] = 1j * r
                out.append(F)
    return np.array(out)


def frechet_apply(eig: EigenDecomposition, divdiff: np.ndarray, H) -> np.ndarray:
    """Daleckii-Krein formula ``Q (Gamma o (Q* H Q)) Q*``."""
    Q = eig.vectors
    return symmetrize(Q @ (divdiff * (dagger(Q) @ H @ Q)) @ dagger(Q))
