"""Pure numpy implementations of the measure kernels.

A discrete generator measure is passed as two float arrays: support points
``lam`` in ``[0, 1]`` and positive masses ``w``.  The generator is

    f(x) = sum_k w_k x / ((1 - lam_k) x + lam_k).
"""

import numpy as np

from ..quadrature import adaptive_simpson

MAX_BRACKET_STEPS = 2100
MAX_ROOT_ITER = 200


def fmu(lam, w, x):
    x = np.asarray(x, dtype=float)[:, None]
    return (w * x / ((1 - lam) * x + lam)).sum(axis=1)


def fmu_prime(lam, w, x):
    x = np.asarray(x, dtype=float)[:, None]
    return (w * lam / ((1 - lam) * x + lam) ** 2).sum(axis=1)


def fmu_loewner(lam, w, s):
    """Divided-difference (Loewner) matrix of the generator at points ``s``."""
    s = np.asarray(s, dtype=float)
    inv = 1 / ((1 - lam) * s[:, None] + lam)
    return np.einsum("k,ik,jk->ij", w * lam, inv, inv)


def fmu_inverse(lam, w, t, rtol):
    """Solve ``f(u) = t`` lane-wise by bracketed Newton with bisection fallback.

    Targets must lie inside the open range of ``f``; lanes whose bracket
    cannot be established come back as ``nan``.
    """
    t = np.asarray(t, dtype=float)
    lo = t / 2
    hi = t * 2
    # out-of-range targets drive the brackets to 0 or inf; that is detected below
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(MAX_BRACKET_STEPS):
            m = fmu(lam, w, lo) > t
            if not m.any():
                break
            lo[m] /= 2
        for _ in range(MAX_BRACKET_STEPS):
            m = fmu(lam, w, hi) < t
            if not m.any():
                break
            hi[m] *= 2
        ok = (fmu(lam, w, lo) <= t) & (fmu(lam, w, hi) >= t) & (lo > 0) & np.isfinite(hi)
    # park unbracketed lanes on a harmless finite point; they are masked at the end
    lo, hi, t = np.where(ok, lo, 0.5), np.where(ok, hi, 2.0), np.where(ok, t, 1.0)
    u = np.sqrt(lo * hi)
    done = ~ok
    for _ in range(MAX_ROOT_ITER):
        r = fmu(lam, w, u) - t
        done |= r == 0
        above = r > 0
        hi = np.where(above, u, hi)
        lo = np.where(above, lo, u)
        with np.errstate(divide="ignore", invalid="ignore"):
            un = u - r / fmu_prime(lam, w, u)
        outside = ~((un >= lo) & (un <= hi)) | ~np.isfinite(un)
        un = np.where(outside, (lo + hi) / 2, un)
        step = np.abs(un - u)
        u = np.where(done, u, un)
        done |= (step <= rtol * u) | (hi - lo <= rtol * u)
        if done.all():
            break
    return np.where(ok, u, np.nan)


def g_potential(lam, w, x, atol):
    """``g(x) = int_1^x (1 - 1/f^{-1}(t)) dt`` by adaptive Simpson, per entry of ``x``."""

    def h(t):
        return 1 - 1 / fmu_inverse(lam, w, t, 1e-13)

    return adaptive_simpson(h, 1.0, x, atol)
