"""Quadrature rules on the unit interval and a scalar adaptive Simpson rule."""

from __future__ import annotations

import numpy as np
from scipy import special

_EPS = np.finfo(float).eps


def gauss_jacobi_unit(n: int, alpha: float, beta: float):
    """Gauss-Jacobi rule on ``[0, 1]`` for the weight ``s**alpha * (1 - s)**beta``.

    Weights are normalized to sum to one, i.e. the rule integrates against
    the Beta(alpha + 1, beta + 1) probability density.
    """
    # scipy's weight is (1 - x)**a (1 + x)**b on [-1, 1]
    with np.errstate(divide="ignore", invalid="ignore"):
        x, w = special.roots_jacobi(n, beta, alpha)
    s = (x + 1) / 2
    return s, w / w.sum()


def gauss_legendre_unit(n: int):
    """Gauss-Legendre rule on ``[0, 1]`` with weights summing to one."""
    x, w = np.polynomial.legendre.leggauss(n)
    return (x + 1) / 2, w / w.sum()


def adaptive_simpson(func, a: float, b, atol: float = 1e-11, max_depth: int = 50) -> np.ndarray:
    """Integrate ``func`` over ``[a, b_i]`` for every entry of ``b`` by adaptive Simpson.

    The refinement tree is walked breadth first so that ``func`` is called
    once per level on all pending abscissae (it must be vectorized).  Each
    node is evaluated exactly once: values are handed down to the children.
    An interval is accepted when the two-panel estimate differs from the
    one-panel estimate by at most ``15 * eps`` (``eps`` halves per level), at
    ``max_depth``, or when the difference is at roundoff level.  ``b < a``
    gives the signed integral.  A non-finite integrand value makes the
    affected entry non-finite instead of triggering endless refinement.
    """
    b = np.atleast_1d(np.asarray(b, dtype=float))
    total = np.zeros(b.shape)
    live = b != a
    owner = np.flatnonzero(live)
    if owner.size == 0:
        return total
    lo = np.full(owner.size, float(a))
    hi = b[owner]
    mid = (lo + hi) / 2
    vals = func(np.concatenate([lo[:1], hi, mid]))
    flo = np.full(owner.size, vals[0])
    fhi = vals[1 : 1 + owner.size]
    fmid = vals[1 + owner.size :]
    whole = (hi - lo) / 6 * (flo + 4 * fmid + fhi)
    eps = np.full(owner.size, float(atol))
    depth = 0
    while owner.size:
        lm = (lo + mid) / 2
        rm = (mid + hi) / 2
        v = func(np.concatenate([lm, rm]))
        flm, frm = v[: owner.size], v[owner.size :]
        left = (mid - lo) / 6 * (flo + 4 * flm + fmid)
        right = (hi - mid) / 6 * (fmid + 4 * frm + fhi)
        delta = left + right - whole
        done = (
            (np.abs(delta) <= 15 * eps)
            | (np.abs(delta) <= 64 * _EPS * (np.abs(left) + np.abs(right)))
            | (depth >= max_depth)
            | ~np.isfinite(delta)  # a non-finite integrand cannot be refined away
        )
        np.add.at(total, owner[done], (left + right + delta / 15)[done])
        keep = ~done
        owner = np.concatenate([owner[keep], owner[keep]])
        lo, mid, hi, flo, fmid, fhi, whole = (
            np.concatenate([lo[keep], mid[keep]]),
            np.concatenate([lm[keep], rm[keep]]),
            np.concatenate([mid[keep], hi[keep]]),
            np.concatenate([flo[keep], fmid[keep]]),
            np.concatenate([flm[keep], frm[keep]]),
            np.concatenate([fmid[keep], fhi[keep]]),
            np.concatenate([left[keep], right[keep]]),
        )
        eps = np.concatenate([eps[keep], eps[keep]]) / 2
        depth += 1
    return total
