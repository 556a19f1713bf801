"""Property checks on parameter space: omitted values, the circle-mean
inequality for log r, semicontinuity of the omitted set on the sphere, and
tracking of a claimed exceptional value a(w) along a path.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DomainError, MissingMetadata, NumericalError
from .families import ParametricFamily
from .sphere import INFINITY, SphereValue, as_sphere_value, chordal_distance
from .zeros import ExceedsSearchBound, Finite, count_zeros, first_zero_radius

__all__ = [
    "MeanInequalityReport",
    "PathSample",
    "PathTrace",
    "SemicontinuityReport",
    "chordal_distance",
    "holomorphy_residual",
    "linear_path",
    "omitted_value_test",
    "semicontinuity_check",
    "superharmonic_mean_check",
    "track_exceptional_value",
]


def omitted_value_test(family: ParametricFamily, w: complex, a: SphereValue, R: float) -> bool:
    """True when f(z, w) = a has no solution with |z| < R.

    ``True`` is finite-radius evidence of omission, ``False`` is conclusive.
    Infinity is omitted by every entire fiber.
    """
    a = as_sphere_value(a)
    if a is INFINITY:
        return True
    return count_zeros(family, w, R, shift=a).count == 0


@dataclass(frozen=True)
class MeanInequalityReport:
    w0: complex
    delta: float
    circle_mean: float
    center_value: float
    n_theta: int
    skipped_nodes: int
    tolerance: float
    verdict: str


def superharmonic_mean_check(
    family: ParametricFamily,
    w0: complex,
    delta: float,
    n_theta: int = 32,
    *,
    R_max: float = 64.0,
    atol: float = 1e-6,
    allowance: Optional[float] = None,
) -> MeanInequalityReport:
    """Compare the mean of log r over w0 + delta e^{it} with log r(w0).

    ``pass`` iff mean <= center + atol + allowance (allowance defaults to
    delta**2). Fibers beyond the search bound, or a zero at the origin of the
    center fiber, make the comparison ``inconclusive``.
    """
    if not delta > 0:
        raise DomainError("delta must be positive")
    tolerance = atol + (delta**2 if allowance is None else allowance)
    center = first_zero_radius(family, w0, R_max)
    thetas = 2 * np.pi * np.arange(n_theta) / n_theta
    ring = [first_zero_radius(family, w0 + delta * np.exp(1j * t), R_max) for t in thetas]
    skipped = sum(isinstance(r, ExceedsSearchBound) for r in ring)
    finite_logs = [r.log for r in ring if isinstance(r, Finite)]
    mean = float(np.mean(finite_logs)) if finite_logs else math.inf
    center_value = center.log
    if skipped or isinstance(center, ExceedsSearchBound) or center_value == -math.inf:
        verdict = "inconclusive"
    else:
        verdict = "pass" if mean <= center_value + tolerance else "fail"
    return MeanInequalityReport(
        w0=complex(w0),
        delta=float(delta),
        circle_mean=mean,
        center_value=center_value,
        n_theta=n_theta,
        skipped_nodes=skipped,
        tolerance=tolerance,
        verdict=verdict,
    )


def sphere_samples(rng: np.random.Generator, n: int) -> list[SphereValue]:
    """Points uniform by area on the Riemann sphere (stereographic from the north pole)."""
    v = rng.standard_normal((n, 3))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    out = []
    for x, y, zc in v:
        if zc >= 1.0:
            out.append(INFINITY)
        else:
            out.append(complex(x, y) / (1.0 - zc))
    return out


@dataclass(frozen=True)
class SemicontinuityReport:
    w0: complex
    epsilon: float
    delta: float
    radius: float
    omitted_at_w0: tuple
    tested: tuple
    violations: tuple
    verdict: str


def semicontinuity_check(
    family: ParametricFamily,
    w0: complex,
    epsilon: float,
    delta: float,
    R: float,
    n_samples: int = 8,
    *,
    seed: int = 0,
    n_probes: int = 8,
) -> SemicontinuityReport:
    """Values a at chordal distance > epsilon from A(w0) must be attained near w0.

    Each sampled a is counted as a root of f - a inside |z| < R at w0 and at
    ``n_probes`` parameters on |w - w0| = delta. A zero count anywhere is a
    violation.
    """
    if not 0 < epsilon < 2:
        raise DomainError("epsilon must lie in (0, 2)")
    omitted = tuple(family.exceptional_set_at(w0))
    rng = np.random.default_rng(seed)
    tested: list[complex] = []
    for _ in range(1000):
        for a in sphere_samples(rng, n_samples):
            if all(chordal_distance(a, b) > epsilon for b in omitted):
                tested.append(a)
                if len(tested) == n_samples:
                    break
        if len(tested) == n_samples:
            break
    probes = [w0] + [w0 + delta * np.exp(2j * np.pi * k / n_probes) for k in range(n_probes)]
    violations = []
    for a in tested:
        for w in probes:
            if count_zeros(family, w, R, shift=a).count == 0:
                violations.append((a, complex(w)))
    return SemicontinuityReport(
        w0=complex(w0),
        epsilon=float(epsilon),
        delta=float(delta),
        radius=float(R),
        omitted_at_w0=omitted,
        tested=tuple(tested),
        violations=tuple(violations),
        verdict="pass" if not violations else "fail",
    )


def holomorphy_residual(values, h: float) -> float:
    """Max over interior cells of |da/dx + i da/dy| by central differences.

    ``values[i, j]`` is a(x_j + i y_i): rows run along the imaginary axis.
    """
    if any(v is INFINITY for v in np.asarray(values, dtype=object).ravel()):
        raise DomainError("holomorphy residual needs finite samples")
    a = np.asarray(values, dtype=np.complex128)
    if a.ndim != 2 or min(a.shape) < 3:
        raise DomainError("need a rectangular grid with at least 3x3 samples")
    dx = (a[1:-1, 2:] - a[1:-1, :-2]) / (2 * h)
    dy = (a[2:, 1:-1] - a[:-2, 1:-1]) / (2 * h)
    return float(np.max(np.abs(dx + 1j * dy)))


@dataclass(frozen=True)
class PathSample:
    w: complex
    a: SphereValue
    omitted_verified: bool
    search_radius: float
    error: Optional[str] = None


@dataclass(frozen=True)
class PathTrace:
    samples: tuple
    poles: tuple
    cr_residual: float
    cr_cells: int = 0

    @property
    def errors(self) -> int:
        return sum(s.error is not None for s in self.samples)


def linear_path(w_start: complex, w_end: complex, n: int) -> list[complex]:
    if n < 2:
        raise DomainError("a path needs at least two points")
    w_start, w_end = complex(w_start), complex(w_end)
    return [(w_start * (n - 1 - k) + w_end * k) / (n - 1) for k in range(n)]


def _fit_zero(ws: Sequence[complex], hs: Sequence[complex], near: complex) -> Optional[complex]:
    """Zero of the low-degree polynomial through (w, h) closest to ``near``."""
    ws = np.asarray(ws, dtype=np.complex128) - near
    deg = min(2, len(ws) - 1)
    vander = np.vander(ws, deg + 1)
    coef, *_ = np.linalg.lstsq(vander, np.asarray(hs, dtype=np.complex128), rcond=None)
    roots = np.roots(coef)
    if roots.size == 0:
        return None
    return complex(roots[np.argmin(np.abs(roots))] + near)


def _detect_poles(ws, avals, pole_tol, reach):
    """Pole candidates of a along the path.

    Interior: each run of samples with |a| > 1/pole_tol contributes its
    maximizer, refined to the nearest zero of a local fit of 1/a. Ends: when
    |a| grows monotonically into an endpoint, 1/a is extrapolated and a zero
    within ``reach`` of the endpoint is reported.
    """
    mags = np.array([math.inf if a is INFINITY else abs(a) for a in avals])
    poles = []
    n = len(ws)
    big = mags > 1.0 / pole_tol
    i = 0
    while i < n:
        if not big[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and big[j + 1]:
            j += 1
        k = i + int(np.argmax(mags[i : j + 1]))
        if avals[k] is INFINITY:
            poles.append(complex(ws[k]))
        else:
            lo, hi = max(0, k - 1), min(n, k + 2)
            pts = [(ws[m], 1.0 / avals[m]) for m in range(lo, hi) if avals[m] is not INFINITY]
            z = _fit_zero([p for p, _ in pts], [h for _, h in pts], ws[k]) if len(pts) >= 2 else None
            poles.append(z if z is not None and abs(z - ws[k]) <= abs(ws[hi - 1] - ws[lo]) else complex(ws[k]))
        i = j + 1
    for end, inner in ((0, slice(0, 4)), (n - 1, slice(n - 4, n))):
        idx = list(range(n))[inner]
        if len(idx) < 3 or any(avals[m] is INFINITY for m in idx) or any(m <= 0 for m in mags[idx]):
            continue
        seq = mags[idx] if end == n - 1 else mags[idx][::-1]
        if not np.all(np.diff(seq) > 0) or big[end]:
            continue
        z = _fit_zero([ws[m] for m in idx], [1.0 / avals[m] for m in idx], ws[end])
        if z is None or abs(z - ws[end]) > reach:
            continue
        # the zero must lie beyond the endpoint, not back along the path
        other = ws[idx[0]] if end == n - 1 else ws[idx[-1]]
        if abs(z - other) > abs(z - ws[end]):
            poles.append(z)
    return poles


def track_exceptional_value(
    family: ParametricFamily,
    path: Sequence[complex],
    R: float,
    candidate: Optional[Callable[[complex], SphereValue]] = None,
    *,
    pole_tol: float = 1e-3,
    exclusion: float = 0.05,
    cr_step: float = 1e-5,
    reach: Optional[float] = None,
    threads: int = 1,
) -> PathTrace:
    """Verify a claimed exceptional value a(w) along ``path``.

    ``candidate`` overrides the family's ``known_exceptional`` metadata. Each
    sample records whether f(., w) - a(w) is zero-free in |z| < R; the claimed
    function is also checked for holomorphy with a 3x3 Cauchy-Riemann stencil
    at every sample farther than ``exclusion`` from a pole candidate.
    ``reach`` bounds how far beyond an endpoint a pole may be extrapolated
    (default: a tenth of the path's chord length).
    """
    afn = candidate if candidate is not None else family.known_exceptional
    if afn is None:
        raise MissingMetadata(f"family {family.key!r} has no exceptional-value metadata; pass a candidate")
    ws = [complex(w) for w in path]
    if len(ws) < 2:
        raise DomainError("a path needs at least two points")

    def sample(w):
        a = as_sphere_value(afn(w))
        try:
            ok = omitted_value_test(family, w, a, R)
            return PathSample(w, a, ok, float(R))
        except NumericalError as exc:
            return PathSample(w, a, False, float(R), exc.tag)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            samples = list(pool.map(sample, ws))
    else:
        samples = [sample(w) for w in ws]
    if reach is None:
        reach = 0.1 * abs(ws[-1] - ws[0])
    poles = _detect_poles(ws, [s.a for s in samples], pole_tol, reach)

    offsets = [[complex(dx, dy) * cr_step for dx in (-1, 0, 1)] for dy in (-1, 0, 1)]
    worst, cells = 0.0, 0
    for w in ws:
        if any(abs(w - p) <= exclusion for p in poles):
            continue
        stencil = [[as_sphere_value(afn(w + d)) for d in row] for row in offsets]
        if any(v is INFINITY for row in stencil for v in row):
            continue
        worst = max(worst, holomorphy_residual(stencil, cr_step))
        cells += 1
    return PathTrace(samples=tuple(samples), poles=tuple(poles), cr_residual=worst, cr_cells=cells)
