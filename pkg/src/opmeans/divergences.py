"""Distances, divergences and geodesics on the positive definite cone."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DomainError
from .hermitian import as_spd, invsqrtm, matrix_function, sqrtm, symmetrize
from .kubo_ando import GeneratorMeasure, MeanDescriptor, geometric_mean, mean
from .quadrature import adaptive_simpson

#: absolute tolerance of the adaptive Simpson rule for g_sigma
G_ATOL = 1e-11
#: relative margin kept from the ends of ran(f_sigma)
RANGE_MARGIN = 1e-12


def _check_t(t):
    if not 0 <= t <= 1:
        raise DomainError(f"curve parameter t = {t!r} is outside [0, 1]")


def _congruence_spectrum(A, B):
    """Eigenvalues of ``A^(-1/2) B A^(-1/2)``."""
    Aih = invsqrtm(as_spd(A, "A"))
    return np.linalg.eigvalsh(symmetrize(Aih @ as_spd(B, "B") @ Aih))


# ---------------------------------------------------------------------------
# Riemannian trace metric


def d_rtm(A, B) -> float:
    """Riemannian trace metric distance ``||log(A^(-1/2) B A^(-1/2))||``."""
    return float(np.sqrt(np.sum(np.log(_congruence_spectrum(A, B)) ** 2)))


def rtm_geodesic(A, B, t: float) -> np.ndarray:
    """Point ``A^(1/2) (A^(-1/2) B A^(-1/2))^t A^(1/2)`` of the RTM geodesic."""
    _check_t(t)
    return geometric_mean(A, B, t)


def rtm_velocity(A, B, t: float) -> np.ndarray:
    """Derivative of :func:`rtm_geodesic` with respect to ``t``."""
    _check_t(t)
    A = as_spd(A, "A")
    Ah, Aih = sqrtm(A), invsqrtm(A)
    M = symmetrize(Aih @ as_spd(B, "B") @ Aih)
    return symmetrize(Ah @ matrix_function(M, lambda x: x**t * np.log(x)) @ Ah)


# ---------------------------------------------------------------------------
# Bures-Wasserstein


def d_bw(A, B) -> float:
    """Bures-Wasserstein distance.

    The radicand ``tr A + tr B - 2 tr (A^(1/2) B A^(1/2))^(1/2)`` is clamped at
    zero when it is negative by roundoff; a clearly negative value is an
    internal error.
    """
    A = as_spd(A, "A")
    B = as_spd(B, "B")
    Ah = sqrtm(A)
    cross = np.sum(np.sqrt(np.clip(np.linalg.eigvalsh(symmetrize(Ah @ B @ Ah)), 0, None)))
    trA, trB = np.trace(A).real, np.trace(B).real
    rad = trA + trB - 2 * cross
    if rad < -1e-10 * max(1.0, trA + trB):
        raise ArithmeticError(f"negative Bures-Wasserstein radicand {rad!r}")
    return float(np.sqrt(max(rad, 0.0)))


def _bw_cross_terms(A, B):
    """``(AB)^(1/2)`` and ``(BA)^(1/2)`` with the principal-branch conventions."""
    Ah, Aih = sqrtm(A), invsqrtm(A)
    R = sqrtm(symmetrize(Ah @ B @ Ah))
    return Ah @ R @ Aih, Aih @ R @ Ah


def bw_curve_verbatim(A, B, t: float) -> np.ndarray:
    """``(1-t)^2 A^2 + t^2 B^2 + t(1-t)((AB)^(1/2) + (BA)^(1/2))``.

    This is the curve exactly as it is usually printed; its endpoints are
    ``A^2`` and ``B^2``, so it is *not* the geodesic from ``A`` to ``B``.
    See :func:`bw_geodesic`.
    """
    _check_t(t)
    A = as_spd(A, "A")
    B = as_spd(B, "B")
    AB, BA = _bw_cross_terms(A, B)
    return symmetrize((1 - t) ** 2 * A @ A + t**2 * B @ B + t * (1 - t) * (AB + BA))


def bw_geodesic(A, B, t: float) -> np.ndarray:
    """Bures-Wasserstein geodesic ``(1-t)^2 A + t^2 B + t(1-t)((AB)^(1/2) + (BA)^(1/2))``.

    Equals ``((1-t) I + t T) A ((1-t) I + t T)`` with ``T`` the optimal
    transport map ``A^(-1/2) (A^(1/2) B A^(1/2))^(1/2) A^(-1/2)``.
    """
    _check_t(t)
    A = as_spd(A, "A")
    B = as_spd(B, "B")
    AB, BA = _bw_cross_terms(A, B)
    return symmetrize((1 - t) ** 2 * A + t**2 * B + t * (1 - t) * (AB + BA))


# ---------------------------------------------------------------------------
# generalized quantum Hellinger divergence


def phi_mu(mu: GeneratorMeasure, A, B) -> float:
    """``tr((1 - c) A + c B - A sigma_mu B)`` with ``c`` the center of ``mu``."""
    A = as_spd(A, "A")
    B = as_spd(B, "B")
    c = mu.center
    return float(np.trace((1 - c) * A + c * B - mean(mu, A, B)).real)


# ---------------------------------------------------------------------------
# symmetric-mean divergence


@dataclass(frozen=True, eq=False)
class SigmaPotential:
    """Convex potential ``g(x) = int_1^x (1 - 1/f^{-1}(t)) dt`` of a symmetric mean.

    ``g`` is defined on ``ran(f)``.  When the descriptor comes straight from a
    discrete measure, the inverse and the quadrature run in the compiled
    kernels; otherwise the descriptor's vectorized inverse is used.
    """

    descriptor: MeanDescriptor
    atol: float = G_ATOL

    def __post_init__(self):
        if not self.descriptor.is_symmetric(tol=1e-8):
            raise DomainError(f"{self.descriptor.name} is not a symmetric mean")

    @property
    def domain(self):
        return self.descriptor.range

    @property
    def _measure_form(self) -> bool:
        d = self.descriptor
        return d.measure is not None and d.f_raw == d.measure.f

    def inside(self, x) -> np.ndarray:
        lo, hi = self.domain
        x = np.asarray(x, dtype=float)
        return (x > lo + RANGE_MARGIN * max(1.0, lo)) & (x < hi * (1 - RANGE_MARGIN))

    def _check(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        ok = self.inside(x)
        if not ok.all():
            raise DomainError(f"{x[~ok][0]!r} is outside the domain {self.domain} of g")
        return x

    def g(self, x):
        xa = self._check(x)
        if self._measure_form:
            out = _kernels.g_potential(*self.descriptor.measure.support, xa, self.atol)
        else:
            inverse = self.descriptor.f_inverse
            out = adaptive_simpson(lambda t: 1 - 1 / inverse(t), 1.0, xa, self.atol)
        return float(out[0]) if np.ndim(x) == 0 else out

    def g_prime(self, x):
        xa = self._check(x)
        out = 1 - 1 / np.atleast_1d(self.descriptor.f_inverse(xa))
        return float(out[0]) if np.ndim(x) == 0 else out

    def g_second(self, x):
        xa = self._check(x)
        u = np.atleast_1d(self.descriptor.f_inverse(xa))
        out = 1 / (np.atleast_1d(self.descriptor.f_prime(u)) * u**2)
        return float(out[0]) if np.ndim(x) == 0 else out


def g_sigma(P, x):
    """Evaluate the potential ``g_sigma`` at ``x``; raises outside ``ran(f_sigma)``."""
    if isinstance(P, MeanDescriptor):
        P = SigmaPotential(P)
    return P.g(x)


def phi_sigma(P, A, B) -> float:
    """``tr g_sigma(A^(-1/2) B A^(-1/2))``, or ``inf`` when that spectrum
    leaves ``ran(f_sigma)``."""
    if isinstance(P, MeanDescriptor):
        P = SigmaPotential(P)
    s = _congruence_spectrum(A, B)
    if not P.inside(s).all():
        return math.inf
    return float(np.sum(P.g(s)))


__all__ = [
    "SigmaPotential",
    "bw_curve_verbatim",
    "bw_geodesic",
    "d_bw",
    "d_rtm",
    "g_sigma",
    "phi_mu",
    "phi_sigma",
    "rtm_geodesic",
    "rtm_velocity",
]
