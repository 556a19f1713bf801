"""Argument-principle analysis of a single fiber z -> f(z, w).

Zero counts come from the trapezoid rule applied to f_z/f on circles. Zero
locations are recovered from the power-sum moments of f_z/f (Newton's
identities give a polynomial whose roots seed a Newton polish on f), and the
recovered set is always reconciled against an independent count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .contour import DEFAULT_TOL, MAX_NODES, cauchy_coeff, circle_moments
from .errors import (
    DomainError,
    IntegrandBlowUp,
    NoZeroFreeDisk,
    NonConvergence,
    NumericalError,
    OriginIsZero,
    UnresolvedCluster,
    ZeroNearContour,
)
from .families import ParametricFamily

# d^p/dz^p (f'/f) at 0 equals -p! * sum a^(-p-1) over the zeros a (checked on z^2 - 1).
FP_SIGN = -1

RESIDUAL_LIMIT = 0.01
JITTER = tuple(1.0 + (-1) ** (k + 1) * k * 1.25e-4 for k in range(1, 9))
PROBE_START = 1.0 / 64
MOMENT_MAX = 6
MAX_LOCATED = 512
CLUSTER_DIAMETER = 1e-6
NEWTON_STEPS = 100


@dataclass(frozen=True)
class ZeroCountResult:
    count: int
    residual: float
    radius_used: float


@dataclass(frozen=True)
class Finite:
    value: float

    @property
    def log(self) -> float:
        return math.log(self.value) if self.value > 0 else -math.inf


@dataclass(frozen=True)
class ExceedsSearchBound:
    bound: float

    @property
    def log(self) -> float:
        return math.inf


FirstZeroRadius = Union[Finite, ExceedsSearchBound]


@dataclass(frozen=True)
class ZeroInventory:
    zeros: list
    search_radius: float
    total_count: int
    validated: bool

    @property
    def multiplicity_sum(self) -> int:
        return sum(m for _, m in self.zeros)


@dataclass(frozen=True)
class DetectionValue:
    p: int
    value: complex
    contour_radius: float
    origin_shift: complex = 0j


def _logderiv(family: ParametricFamily, w, shift):
    return lambda z: family.log_derivative(z, w, shift)


def _raw_count(family, w, radius, center, shift, tol, max_nodes):
    s, _ = circle_moments(_logderiv(family, w, shift), center, radius, 0, tol=tol, max_nodes=max_nodes)
    return complex(s[0])


def count_zeros(
    family: ParametricFamily,
    w: complex,
    R: float,
    *,
    center: complex = 0j,
    shift: complex = 0j,
    tol: float = DEFAULT_TOL,
    max_nodes: int = MAX_NODES,
) -> ZeroCountResult:
    """Number of solutions of f(z, w) = shift in |z - center| < R (up to jitter).

    A contour that passes too close to a zero is retried on the radii
    R * (1 +- k * 1.25e-4), k = 1..8, in a fixed order.
    """
    if not R > 0:
        raise DomainError(f"radius must be positive, got {R}")
    failures = []
    for factor in (1.0,) + JITTER:
        rho = R * factor
        try:
            raw = _raw_count(family, w, rho, center, shift, tol, max_nodes)
        except (NonConvergence, IntegrandBlowUp) as exc:
            failures.append(exc)
            continue
        n = round(raw.real)
        residual = abs(raw - n)
        if residual <= RESIDUAL_LIMIT and n >= 0:
            return ZeroCountResult(int(n), float(residual), rho)
        failures.append(None)
    if all(isinstance(exc, NonConvergence) for exc in failures):
        raise NonConvergence(f"zero count for w={w} on radius {R} did not converge on any jittered radius")
    raise ZeroNearContour(f"zero of f(., {w}) - {shift} within jitter range of |z - {center}| = {R}")


def _newton(family, w, shift, z0):
    g = _logderiv(family, w, shift)
    z = complex(z0)
    for _ in range(NEWTON_STEPS):
        d = complex(g(z))
        if math.isinf(d.real) or math.isinf(d.imag):
            # f - shift vanishes to working precision
            return z, True
        if math.isnan(d.real) or math.isnan(d.imag) or d == 0:
            return z, False
        step = 1.0 / d
        z -= step
        if abs(step) <= 1e-15 * max(1.0, abs(z)):
            return z, True
    return z, False


def _group(points, radius_scale):
    """Merge points closer than the cluster diameter; returns [(center, size)]."""
    groups: list[list[complex]] = []
    for z in points:
        for grp in groups:
            if abs(z - grp[0]) <= CLUSTER_DIAMETER * max(1.0, radius_scale, abs(z)):
                grp.append(z)
                break
        else:
            groups.append([z])
    return [(complex(np.mean(g)), len(g)) for g in groups]


def _cluster_multiplicity(family, w, shift, z, others, scale):
    gap = min((abs(z - o) for o in others), default=math.inf)
    radius = min(0.5 * gap, 1e-3 * max(1.0, scale))
    radius = max(radius, 20 * CLUSTER_DIAMETER * max(1.0, abs(z)))
    return count_zeros(family, w, radius, center=z, shift=shift).count


def _zeros_from_moments(family, w, center, shift, rho, k):
    """The k zeros inside |z - center| < rho as [(z, m)], or None if unresolved."""
    g = _logderiv(family, w, shift)
    s, _ = circle_moments(g, center, rho, k)
    # elementary symmetric functions of the scaled zeros
    e = [1.0 + 0j]
    for m in range(1, k + 1):
        acc = sum((-1) ** (i - 1) * e[m - i] * s[i] for i in range(1, m + 1))
        e.append(acc / m)
    coeffs = [(-1) ** m * e[m] for m in range(k + 1)]
    seeds = center + rho * np.roots(coeffs) if k > 0 else np.zeros(0, complex)
    polished = []
    for z0 in seeds:
        z, ok = _newton(family, w, shift, z0)
        if not ok or abs(z - center) > rho * (1 + 1e-9):
            return None
        polished.append(z)
    groups = _group(polished, rho)
    zeros = []
    for i, (z, size) in enumerate(groups):
        if size > 1:
            others = [o for j, (o, _) in enumerate(groups) if j != i]
            try:
                mult = _cluster_multiplicity(family, w, shift, z, others, rho)
            except NumericalError:
                return None
            if mult != size:
                return None
        zeros.append((z, size))
    return zeros


def first_zero_radius(
    family: ParametricFamily,
    w: complex,
    R_max: float = 64.0,
    *,
    center: complex = 0j,
    shift: complex = 0j,
) -> FirstZeroRadius:
    """Smallest modulus of a zero of f(., w) - shift (measured from ``center``).

    Radii double from 1/64 until a zero is enclosed (the last probe is clamped
    to ``R_max``). The enclosing annulus is then narrowed by counting and the
    zeros inside it are recovered from contour moments and polished by Newton.
    """
    ring = center + PROBE_START * np.exp(2j * np.pi * np.arange(16) / 16)
    scale = 1.0 + float(np.max(np.abs(family.eval(ring, w) - shift)))
    if abs(family.eval(center, w) - shift) <= 1e-12 * scale:
        return Finite(0.0)
    lo, probe = 0.0, PROBE_START
    while True:
        rho = min(probe, R_max)
        res = count_zeros(family, w, rho, center=center, shift=shift)
        if res.count >= 1:
            hi, k = res.radius_used, res.count
            break
        lo = res.radius_used
        if rho >= R_max:
            return ExceedsSearchBound(R_max)
        probe *= 2
    return Finite(_refine_first_radius(family, w, center, shift, lo, hi, k))


def _refine_first_radius(family, w, center, shift, lo, hi, k):
    for _ in range(200):
        narrow = hi - lo <= 1e-3 * hi
        if k <= MOMENT_MAX or narrow:
            try:
                zeros = _zeros_from_moments(family, w, center, shift, hi, k)
            except NumericalError:
                zeros = None
            if zeros is not None:
                mods = [abs(z - center) for z, _ in zeros]
                if min(mods) >= lo * (1 - 1e-9):
                    return float(min(mods))
            if hi - lo <= 1e-7 * hi:
                break
        mid = 0.5 * (lo + hi)
        res = count_zeros(family, w, mid, center=center, shift=shift)
        if res.count == 0:
            lo = res.radius_used
        else:
            hi, k = res.radius_used, res.count
    raise UnresolvedCluster(f"could not resolve the first zero of f(., {w}) in [{lo}, {hi}]")


def _count_cover(family, w, shift, center, radius):
    # covering circles may be enlarged freely, so step outward past nearby zeros
    for grow in (1.0, 1.05, 1.1, 1.2, 1.35):
        try:
            res = count_zeros(family, w, radius * grow, center=center, shift=shift)
            return res.count, res.radius_used
        except ZeroNearContour:
            continue
    raise ZeroNearContour(f"no clean covering circle around {center} (radius {radius})")


def locate_zeros(family: ParametricFamily, w: complex, R: float, *, shift: complex = 0j) -> ZeroInventory:
    """All zeros of f(., w) - shift in |z| < R with multiplicities.

    The disk's bounding square is quadrisected; each square is counted through
    a slightly enlarged circumscribed circle and, once it holds at most
    ``MOMENT_MAX`` zeros, those zeros are recovered from moments and polished.
    Overlapping covers find some zeros twice; duplicates are merged by location.
    """
    total = count_zeros(family, w, R, shift=shift)
    rho = total.radius_used
    if total.count > MAX_LOCATED:
        raise DomainError(f"{total.count} zeros in |z| < {R}; refusing to locate more than {MAX_LOCATED}")
    found: list[tuple[complex, int]] = []

    def visit(center, half_side, cover, k):
        if k == 0:
            return
        if k <= MOMENT_MAX:
            try:
                zeros = _zeros_from_moments(family, w, center, shift, cover, k)
            except NumericalError:
                zeros = None
            if zeros is not None:
                found.extend(zeros)
                return
        if 2 * half_side <= CLUSTER_DIAMETER * max(1.0, abs(center)):
            z, ok = _newton(family, w, shift, center)
            if ok and abs(z - center) <= cover:
                found.append((z, k))
                return
            raise UnresolvedCluster(f"{k} zeros near {center} could not be separated")
        h = 0.5 * half_side
        for dx, dy in ((-1, -1), (1, -1), (-1, 1), (1, 1)):
            c = center + h * complex(dx, dy)
            k_child, cover_child = _count_cover(family, w, shift, c, h * math.sqrt(2.0) * 1.02)
            visit(c, h, cover_child, k_child)

    visit(0j, rho, rho, total.count)
    merged: list[tuple[complex, int]] = []
    for z, m in found:
        if abs(z) >= rho:
            continue
        for i, (z2, m2) in enumerate(merged):
            if abs(z - z2) <= CLUSTER_DIAMETER * max(1.0, abs(z)):
                merged[i] = (z2, max(m, m2))
                break
        else:
            merged.append((z, m))
    merged.sort(key=lambda zm: (abs(zm[0]), zm[0].imag))
    validated = sum(m for _, m in merged) == total.count
    return ZeroInventory(zeros=merged, search_radius=rho, total_count=total.count, validated=validated)


def _choose_origin(family, w):
    f0 = complex(family.eval(0j, w))
    ring = np.exp(2j * np.pi * np.arange(16) / 16)
    scale = 1.0 + float(np.max(np.abs(family.eval(ring, w))))
    if abs(f0) > 1e-12 * scale:
        return [0j]
    candidates = 0.5 * ring
    mags = np.abs(family.eval(candidates, w))
    if mags.max() <= 1e-12 * scale:
        raise OriginIsZero(f"f(., {w}) vanishes at the origin and at every recentring candidate")
    order = np.argsort(-mags, kind="stable")
    return [complex(candidates[i]) for i in order]


def detection_functional(
    family: ParametricFamily,
    w: complex,
    p: int,
    *,
    r: Optional[FirstZeroRadius] = None,
    R_max: float = 64.0,
) -> DetectionValue:
    """p-th z-derivative of f_z/f at the origin (or a recentred origin).

    The Cauchy circle has radius min(r/2, 1), with r the first-zero radius
    about the chosen origin, so it stays inside the zero-free disk. ``r`` may be
    passed in when it is already known for origin 0.
    """
    if p < 1:
        raise DomainError(f"derivative order must be >= 1, got {p}")
    origins = _choose_origin(family, w)
    for origin in origins:
        if r is not None and origin == 0:
            rad = r
        else:
            rad = first_zero_radius(family, w, R_max, center=origin)
        if isinstance(rad, Finite) and rad.value == 0.0:
            continue
        bound = rad.bound if isinstance(rad, ExceedsSearchBound) else rad.value
        radius = min(0.5 * bound, 1.0)
        value = cauchy_coeff(_logderiv(family, w, 0j), origin, radius, p)
        return DetectionValue(p=p, value=value, contour_radius=radius, origin_shift=origin)
    raise NoZeroFreeDisk(f"no zero-free disk around any candidate origin for w={w}")


def functional_from_zeros(inventory: ZeroInventory, p: int) -> complex:
    """Truncated zero sum FP_SIGN * p! * sum m * a^(-p-1) over the inventory."""
    if p < 1:
        raise DomainError(f"derivative order must be >= 1, got {p}")
    if not inventory.validated:
        raise DomainError("inventory is not validated against an independent count")
    if any(z == 0 for z, _ in inventory.zeros):
        raise DomainError("inventory has a zero at the origin")
    total = sum(m * z ** (-p - 1) for z, m in inventory.zeros)
    return complex(FP_SIGN * math.factorial(p) * total)
