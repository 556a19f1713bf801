"""Vectorized numpy versions of the kernels in ``_numba``.

Branch selection mirrors the scalar code exactly; each branch is evaluated on
the subset of points that takes it, so no overflow is produced by a branch
whose result is discarded.
"""

import numpy as np

from .codes import SNAP_ULPS, DISCRETE, EXAMPLE2, EXAMPLE3, EXAMPLE4, LINEAR, QUADRATIC

SQRT_PI = np.sqrt(np.pi)
SQRT2 = np.sqrt(2.0)
SQRT_HALF_PI = np.sqrt(0.5 * np.pi)
SQRT_TWO_PI = np.sqrt(2.0 * np.pi)

CF_RE = 1.5
CF_ABS = 7.0
CF_DEPTH = 80


def _erf_taylor(z):
    z2 = z * z
    t = z.copy()
    s = z.copy()
    active = np.ones(z.shape, dtype=bool)
    n = 1
    while active.any() and n < 2000:
        t[active] *= -z2[active] / n
        term = t[active] / (2 * n + 1)
        s[active] += term
        done = np.abs(term) <= 1e-17 * np.abs(s[active])
        idx = np.flatnonzero(active)
        active[idx[done]] = False
        n += 1
    return 2.0 / SQRT_PI * s


def _erfcx_cf(v):
    t = v.copy()
    for k in range(CF_DEPTH, 0, -1):
        t = v + 0.5 * k / t
    return 1.0 / (SQRT_PI * t)


def _use_cf(z):
    return (z.real >= CF_RE) | (np.abs(z) >= CF_ABS)


def erfcx(zs):
    out = np.empty_like(zs)
    cf = _use_cf(zs)
    out[cf] = _erfcx_cf(zs[cf])
    rest = zs[~cf]
    out[~cf] = np.exp(rest * rest) * (1.0 - _erf_taylor(rest))
    return out


def erf(zs):
    sign = np.where(zs.real < 0.0, -1.0, 1.0)
    z = zs * sign
    out = np.empty_like(z)
    cf = _use_cf(z)
    zc = z[cf]
    out[cf] = 1.0 - np.exp(-zc * zc) * _erfcx_cf(zc)
    out[~cf] = _erf_taylor(z[~cf])
    return sign * out


def _phi1(u):
    out = np.empty_like(u)
    small = np.abs(u) < 0.5
    us = u[small]
    term = np.ones_like(us)
    s = np.ones_like(us)
    for k in range(2, 24):
        term *= us / k
        s += term
    out[small] = s
    ub = u[~small]
    out[~small] = (np.exp(ub) - 1.0) / ub
    return out


def _coef(kind, kp, w):
    if kind == DISCRETE:
        g = 1.0 + 0.0j
        for p in kp:
            g *= w - p
        return g
    return w


def values(kind, kp, w, zs):
    c = _coef(kind, kp, w)
    with np.errstate(over="ignore", invalid="ignore"):
        if kind == LINEAR:
            return zs - w
        if kind == QUADRATIC:
            return zs * zs - w
        if kind == DISCRETE:
            return np.exp(zs) + c * zs
        if kind == EXAMPLE2:
            return zs * _phi1(w * zs)
        if kind == EXAMPLE3:
            out = np.empty_like(zs)
            left = zs.real <= 0.0
            zl = zs[left]
            out[left] = np.exp(-0.5 * zl * zl) * (-1.0 + w * SQRT_HALF_PI * erfcx(-zl / SQRT2))
            zr = zs[~left]
            out[~left] = w * SQRT_TWO_PI - np.exp(-0.5 * zr * zr) * (
                1.0 + w * SQRT_HALF_PI * erfcx(zr / SQRT2)
            )
            return out
        ez = np.exp(zs)
        return ez * _phi1(w * ez)


def derivatives(kind, kp, w, zs):
    c = _coef(kind, kp, w)
    with np.errstate(over="ignore", invalid="ignore"):
        if kind == LINEAR:
            return np.ones_like(zs)
        if kind == QUADRATIC:
            return 2.0 * zs
        if kind == DISCRETE:
            return np.exp(zs) + c
        if kind == EXAMPLE2:
            return np.exp(w * zs)
        if kind == EXAMPLE3:
            return (zs + w) * np.exp(-0.5 * zs * zs)
        ez = np.exp(zs)
        return ez * np.exp(w * ez)


def _exp_tail(u, num, w, a):
    # num * e^u / (e^u - 1 - a w), overflow-free for large Re u
    b = 1.0 + a * w
    if abs(b) <= SNAP_ULPS * (1.0 + abs(a * w)):
        return num.copy()
    out = np.empty_like(u)
    pos = u.real > 0.0
    out[pos] = num[pos] / (1.0 - b * np.exp(-u[pos]))
    big = np.exp(u[~pos])
    out[~pos] = num[~pos] * big / (big - b)
    return out


def _example3_logderiv(w, a, zs):
    out = np.empty_like(zs)
    lg = -0.5 * zs * zs
    left = zs.real <= 0.0
    grow = lg.real > 0.0

    m = left & grow
    z = zs[m]
    bb = -1.0 + w * SQRT_HALF_PI * erfcx(-z / SQRT2)
    out[m] = (z + w) / (bb - a * np.exp(-lg[m]))

    m = left & ~grow
    z = zs[m]
    bb = -1.0 + w * SQRT_HALF_PI * erfcx(-z / SQRT2)
    if a == 0:
        out[m] = (z + w) / bb
    else:
        e = np.exp(lg[m])
        out[m] = (z + w) * e / (e * bb - a)

    c0 = w * SQRT_TWO_PI - a
    m = ~left & grow
    z = zs[m]
    aa = 1.0 + w * SQRT_HALF_PI * erfcx(z / SQRT2)
    out[m] = (z + w) / (c0 * np.exp(-lg[m]) - aa)

    m = ~left & ~grow
    z = zs[m]
    aa = 1.0 + w * SQRT_HALF_PI * erfcx(z / SQRT2)
    if c0 == 0:
        out[m] = -(z + w) / aa
    else:
        e = np.exp(lg[m])
        out[m] = (z + w) * e / (c0 - e * aa)
    return out


def log_derivatives(kind, kp, w, shift, zs):
    c = _coef(kind, kp, w)
    a = shift
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        if kind == LINEAR:
            return 1.0 / (zs - w - a)
        if kind == QUADRATIC:
            return 2.0 * zs / (zs * zs - w - a)
        if kind == DISCRETE:
            ez = np.exp(zs)
            return (ez + c) / (ez + c * zs - a)
        if kind == EXAMPLE3:
            return _example3_logderiv(w, a, zs)
        out = np.empty_like(zs)
        if kind == EXAMPLE2:
            u = w * zs
            small = np.abs(u) < 0.5
            zsm = zs[small]
            out[small] = np.exp(u[small]) / (zsm * _phi1(u[small]) - a)
            ub = u[~small]
            out[~small] = _exp_tail(ub, np.full_like(ub, w), w, a)
            return out
        ez = np.exp(zs)
        u = w * ez
        small = np.abs(u) < 0.5
        es = ez[small]
        out[small] = es * np.exp(u[small]) / (es * _phi1(u[small]) - a)
        ub = u[~small]
        out[~small] = _exp_tail(ub, ub, w, a)
        return out
