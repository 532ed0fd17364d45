"""Numba-compiled versions of the measure kernels (same contracts as ``_numpy``)."""

import numpy as np
from numba import njit

MAX_BRACKET_STEPS = 2100
MAX_ROOT_ITER = 200
MAX_DEPTH = 50
_EPS = np.finfo(np.float64).eps


@njit(cache=True)
def _f(lam, w, x):
    acc = 0.0
    for k in range(lam.shape[0]):
        acc += w[k] * x / ((1.0 - lam[k]) * x + lam[k])
    return acc


@njit(cache=True)
def _fp(lam, w, x):
    acc = 0.0
    for k in range(lam.shape[0]):
        d = (1.0 - lam[k]) * x + lam[k]
        acc += w[k] * lam[k] / (d * d)
    return acc


@njit(cache=True)
def fmu(lam, w, x):
    out = np.empty(x.shape[0])
    for i in range(x.shape[0]):
        out[i] = _f(lam, w, x[i])
    return out


@njit(cache=True)
def fmu_prime(lam, w, x):
    out = np.empty(x.shape[0])
    for i in range(x.shape[0]):
        out[i] = _fp(lam, w, x[i])
    return out


@njit(cache=True)
def fmu_loewner(lam, w, s):
    n = s.shape[0]
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(i, n):
            acc = 0.0
            for k in range(lam.shape[0]):
                di = (1.0 - lam[k]) * s[i] + lam[k]
                dj = (1.0 - lam[k]) * s[j] + lam[k]
                acc += w[k] * lam[k] / (di * dj)
            out[i, j] = acc
            out[j, i] = acc
    return out


@njit(cache=True)
def _inverse(lam, w, t, rtol):
    lo = t / 2.0
    hi = t * 2.0
    steps = 0
    while _f(lam, w, lo) > t and steps < MAX_BRACKET_STEPS:
        lo /= 2.0
        steps += 1
    steps = 0
    while _f(lam, w, hi) < t and steps < MAX_BRACKET_STEPS:
        hi *= 2.0
        steps += 1
    if not (_f(lam, w, lo) <= t and _f(lam, w, hi) >= t and lo > 0.0 and np.isfinite(hi)):
        return np.nan
    u = np.sqrt(lo * hi)
    for _ in range(MAX_ROOT_ITER):
        r = _f(lam, w, u) - t
        if r == 0.0:
            return u
        if r > 0.0:
            hi = u
        else:
            lo = u
        un = u - r / _fp(lam, w, u)
        if not (un >= lo and un <= hi):
            un = 0.5 * (lo + hi)
        step = abs(un - u)
        u = un
        if step <= rtol * u or hi - lo <= rtol * u:
            break
    return u


@njit(cache=True)
def fmu_inverse(lam, w, t, rtol):
    out = np.empty(t.shape[0])
    for i in range(t.shape[0]):
        out[i] = _inverse(lam, w, t[i], rtol)
    return out


@njit(cache=True)
def _h(lam, w, t):
    return 1.0 - 1.0 / _inverse(lam, w, t, 1e-13)


@njit(cache=True)
def _simpson(lam, w, a, b, atol):
    if a == b:
        return 0.0
    size = 2 * MAX_DEPTH + 8
    sa = np.empty(size)
    sb = np.empty(size)
    sfa = np.empty(size)
    sfm = np.empty(size)
    sfb = np.empty(size)
    swhole = np.empty(size)
    seps = np.empty(size)
    sdepth = np.empty(size, dtype=np.int64)
    fa = _h(lam, w, a)
    fb = _h(lam, w, b)
    fm = _h(lam, w, 0.5 * (a + b))
    top = 0
    sa[0] = a
    sb[0] = b
    sfa[0] = fa
    sfm[0] = fm
    sfb[0] = fb
    swhole[0] = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    seps[0] = atol
    sdepth[0] = 0
    top = 1
    total = 0.0
    while top > 0:
        top -= 1
        a = sa[top]
        b = sb[top]
        fa = sfa[top]
        fm = sfm[top]
        fb = sfb[top]
        whole = swhole[top]
        eps = seps[top]
        depth = sdepth[top]
        m = 0.5 * (a + b)
        flm = _h(lam, w, 0.5 * (a + m))
        frm = _h(lam, w, 0.5 * (m + b))
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        delta = left + right - whole
        if not np.isfinite(delta):
            return np.nan
        if (
            abs(delta) <= 15.0 * eps
            or depth >= MAX_DEPTH
            or abs(delta) <= 64.0 * _EPS * (abs(left) + abs(right))
        ):
            total += left + right + delta / 15.0
        else:
            sa[top] = a
            sb[top] = m
            sfa[top] = fa
            sfm[top] = flm
            sfb[top] = fm
            swhole[top] = left
            seps[top] = eps / 2.0
            sdepth[top] = depth + 1
            top += 1
            sa[top] = m
            sb[top] = b
            sfa[top] = fm
            sfm[top] = frm
            sfb[top] = fb
            swhole[top] = right
            seps[top] = eps / 2.0
            sdepth[top] = depth + 1
            top += 1
    return total


@njit(cache=True)
def g_potential(lam, w, x, atol):
    out = np.empty(x.shape[0])
    for i in range(x.shape[0]):
        out[i] = _simpson(lam, w, 1.0, x[i], atol)
    return out
