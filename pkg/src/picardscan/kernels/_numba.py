"""Scalar numba kernels for the family catalog and the complex error function.

Every public function here has a vectorized twin in ``_numpy`` with the same
signature; the two are cross-checked in the test suite.
"""

import cmath
import math

import numpy as np
from numba import njit

from .codes import SNAP_ULPS, DISCRETE, EXAMPLE2, EXAMPLE3, EXAMPLE4, LINEAR, QUADRATIC

SQRT_PI = math.sqrt(math.pi)
SQRT2 = math.sqrt(2.0)
SQRT_HALF_PI = math.sqrt(0.5 * math.pi)
SQRT_TWO_PI = math.sqrt(2.0 * math.pi)

# erf/erfcx: continued fraction on Re z >= CF_RE or |z| >= CF_ABS, Taylor otherwise.
CF_RE = 1.5
CF_ABS = 7.0
CF_DEPTH = 80


@njit(cache=True, nogil=True, error_model="numpy")
def _erf_taylor(z):
    z2 = z * z
    t = z
    s = z
    for n in range(1, 2000):
        t *= -z2 / n
        term = t / (2 * n + 1)
        s += term
        if abs(term) <= 1e-17 * abs(s):
            break
    return 2.0 / SQRT_PI * s


@njit(cache=True, nogil=True, error_model="numpy")
def _erfcx_cf(v):
    # Laplace continued fraction, valid for Re v >= 0 away from the origin
    t = v
    for k in range(CF_DEPTH, 0, -1):
        t = v + 0.5 * k / t
    return 1.0 / (SQRT_PI * t)


@njit(cache=True, nogil=True, error_model="numpy")
def erfcx_scalar(v):
    """exp(v**2) * erfc(v) for Re v >= 0."""
    if v.real >= CF_RE or abs(v) >= CF_ABS:
        return _erfcx_cf(v)
    return cmath.exp(v * v) * (1.0 - _erf_taylor(v))


@njit(cache=True, nogil=True, error_model="numpy")
def erf_scalar(z):
    sign = 1.0
    if z.real < 0.0:
        z = -z
        sign = -1.0
    if z.real >= CF_RE or abs(z) >= CF_ABS:
        return sign * (1.0 - cmath.exp(-z * z) * _erfcx_cf(z))
    return sign * _erf_taylor(z)


@njit(cache=True, nogil=True, error_model="numpy")
def _phi1(u):
    # (exp(u) - 1) / u, entire
    if abs(u) < 0.5:
        term = 1.0 + 0.0j
        s = 1.0 + 0.0j
        for k in range(2, 24):
            term *= u / k
            s += term
        return s
    return (cmath.exp(u) - 1.0) / u


@njit(cache=True, nogil=True, error_model="numpy")
def _div(a, b):
    # numba raises on complex division by zero; match numpy's inf+nanj instead
    if b == 0:
        return complex(math.inf, math.nan)
    return a / b


@njit(cache=True, nogil=True, error_model="numpy")
def _residual_shift(a, w):
    b = 1.0 + a * w
    if abs(b) <= SNAP_ULPS * (1.0 + abs(a * w)):
        return 0j
    return b


@njit(cache=True, nogil=True, error_model="numpy")
def _coef(kind, kp, w):
    if kind == DISCRETE:
        g = 1.0 + 0.0j
        for p in kp:
            g *= w - p
        return g
    return w


@njit(cache=True, nogil=True, error_model="numpy")
def _value(kind, c, w, z):
    if kind == LINEAR:
        return z - w
    if kind == QUADRATIC:
        return z * z - w
    if kind == DISCRETE:
        return cmath.exp(z) + c * z
    if kind == EXAMPLE2:
        return z * _phi1(w * z)
    if kind == EXAMPLE3:
        e = cmath.exp(-0.5 * z * z)
        if z.real <= 0.0:
            return e * (-1.0 + w * SQRT_HALF_PI * erfcx_scalar(-z / SQRT2))
        return w * SQRT_TWO_PI - e * (1.0 + w * SQRT_HALF_PI * erfcx_scalar(z / SQRT2))
    # EXAMPLE4
    ez = cmath.exp(z)
    return ez * _phi1(w * ez)


@njit(cache=True, nogil=True, error_model="numpy")
def _derivative(kind, c, w, z):
    if kind == LINEAR:
        return 1.0 + 0.0j
    if kind == QUADRATIC:
        return 2.0 * z
    if kind == DISCRETE:
        return cmath.exp(z) + c
    if kind == EXAMPLE2:
        return cmath.exp(w * z)
    if kind == EXAMPLE3:
        return (z + w) * cmath.exp(-0.5 * z * z)
    ez = cmath.exp(z)
    return ez * cmath.exp(w * ez)


@njit(cache=True, nogil=True, error_model="numpy")
def _logderiv(kind, c, w, a, z):
    if kind == LINEAR:
        return _div(1.0, z - w - a)
    if kind == QUADRATIC:
        return _div(2.0 * z, z * z - w - a)
    if kind == DISCRETE:
        ez = cmath.exp(z)
        return _div(ez + c, ez + c * z - a)
    if kind == EXAMPLE2:
        u = w * z
        if abs(u) < 0.5:
            return _div(cmath.exp(u), z * _phi1(u) - a)
        # f - a = (e^u - 1 - a w) / w
        b = _residual_shift(a, w)
        if b == 0:
            return w
        if u.real > 0.0:
            return _div(w, 1.0 - b * cmath.exp(-u))
        big = cmath.exp(u)
        return _div(w * big, big - b)
    if kind == EXAMPLE3:
        lg = -0.5 * z * z
        if z.real <= 0.0:
            bb = -1.0 + w * SQRT_HALF_PI * erfcx_scalar(-z / SQRT2)
            if lg.real > 0.0:
                return _div(z + w, bb - a * cmath.exp(-lg))
            if a == 0:
                return _div(z + w, bb)
            e = cmath.exp(lg)
            return _div((z + w) * e, e * bb - a)
        aa = 1.0 + w * SQRT_HALF_PI * erfcx_scalar(z / SQRT2)
        c0 = w * SQRT_TWO_PI - a
        if lg.real > 0.0:
            return _div(z + w, c0 * cmath.exp(-lg) - aa)
        if c0 == 0:
            return _div(-(z + w), aa)
        e = cmath.exp(lg)
        return _div((z + w) * e, c0 - e * aa)
    # EXAMPLE4: u = w e^z and f' / (f - a) = u e^u / (e^u - 1 - a w)
    ez = cmath.exp(z)
    u = w * ez
    if abs(u) < 0.5:
        return _div(ez * cmath.exp(u), ez * _phi1(u) - a)
    b = _residual_shift(a, w)
    if b == 0:
        return u
    if u.real > 0.0:
        return _div(u, 1.0 - b * cmath.exp(-u))
    big = cmath.exp(u)
    return _div(u * big, big - b)


@njit(cache=True, nogil=True, error_model="numpy")
def values(kind, kp, w, zs):
    c = _coef(kind, kp, w)
    out = np.empty(zs.shape[0], dtype=np.complex128)
    for i in range(zs.shape[0]):
        out[i] = _value(kind, c, w, zs[i])
    return out


@njit(cache=True, nogil=True, error_model="numpy")
def derivatives(kind, kp, w, zs):
    c = _coef(kind, kp, w)
    out = np.empty(zs.shape[0], dtype=np.complex128)
    for i in range(zs.shape[0]):
        out[i] = _derivative(kind, c, w, zs[i])
    return out


@njit(cache=True, nogil=True, error_model="numpy")
def log_derivatives(kind, kp, w, shift, zs):
    c = _coef(kind, kp, w)
    out = np.empty(zs.shape[0], dtype=np.complex128)
    for i in range(zs.shape[0]):
        out[i] = _logderiv(kind, c, w, shift, zs[i])
    return out


@njit(cache=True, nogil=True, error_model="numpy")
def erf(zs):
    out = np.empty(zs.shape[0], dtype=np.complex128)
    for i in range(zs.shape[0]):
        out[i] = erf_scalar(zs[i])
    return out


@njit(cache=True, nogil=True, error_model="numpy")
def erfcx(zs):
    out = np.empty(zs.shape[0], dtype=np.complex128)
    for i in range(zs.shape[0]):
        out[i] = erfcx_scalar(zs[i])
    return out
