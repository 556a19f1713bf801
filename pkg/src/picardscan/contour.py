"""Trapezoidal quadrature on circles.

For integrands analytic in an annulus around the circle the equispaced rule
converges geometrically, so node counts are doubled (reusing the previous
nodes) until two successive estimates agree.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import IntegrandBlowUp, NonConvergence

DEFAULT_NODES = 512
DEFAULT_TOL = 1e-10
MAX_NODES = 2**16

Integrand = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class CircleContour:
    center: complex = 0j
    radius: float = 1.0
    nodes: int = DEFAULT_NODES

    def __post_init__(self):
        if not self.radius > 0 or not math.isfinite(self.radius):
            raise ValueError(f"radius must be positive and finite, got {self.radius}")
        n = self.nodes
        if n < 16 or n & (n - 1):
            raise ValueError(f"nodes must be a power of two >= 16, got {n}")


@functools.lru_cache(maxsize=64)
def _unit_nodes(n: int, odd_only: bool = False) -> np.ndarray:
    if odd_only:
        j = np.arange(1, n, 2)
    else:
        j = np.arange(n)
    u = np.exp(2j * np.pi * j / n)
    u.flags.writeable = False
    return u


def _evaluate(fn, center, radius, u):
    z = center + radius * u
    with np.errstate(invalid="ignore", over="ignore"):
        vals = np.atleast_2d(fn(z, u))
    finite = np.isfinite(vals).all(axis=0)
    if not finite.all():
        j = int(np.flatnonzero(~finite)[0])
        raise IntegrandBlowUp(f"integrand blow-up at node z={complex(z[j]):.17g}")
    return vals


def adaptive_means(
    fn: Callable[[np.ndarray, np.ndarray], np.ndarray],
    center: complex,
    radius: float,
    nodes: int = DEFAULT_NODES,
    tol: float = DEFAULT_TOL,
    max_nodes: int = MAX_NODES,
    adaptive: bool = True,
) -> tuple[np.ndarray, int]:
    """Node means of ``fn(z, u)`` over the circle, with u = (z - center)/radius.

    ``fn`` returns an array of shape (m, n) (or (n,)); the result has shape (m,).
    Each component is accepted when a doubling changes it by at most
    ``tol * max(|estimate|, max |fn| at the nodes)``.
    """
    n = nodes
    vals = _evaluate(fn, center, radius, _unit_nodes(n))
    total = vals.sum(axis=1)
    scale = np.abs(vals).max(axis=1)
    mean = total / n
    if not adaptive:
        return mean, n
    while True:
        if 2 * n > max_nodes:
            raise NonConvergence(
                f"trapezoid rule on |z - {center}| = {radius:.17g} not converged at {n} nodes"
            )
        extra = _evaluate(fn, center, radius, _unit_nodes(2 * n, odd_only=True))
        total = total + extra.sum(axis=1)
        scale = np.maximum(scale, np.abs(extra).max(axis=1))
        n *= 2
        refined = total / n
        if np.all(np.abs(refined - mean) <= tol * np.maximum(np.abs(refined), scale)):
            return refined, n
        mean = refined


def circle_integral(
    g: Integrand,
    contour: CircleContour,
    tol: float = DEFAULT_TOL,
    max_nodes: int = MAX_NODES,
    adaptive: bool = True,
) -> complex:
    """Contour integral of ``g`` around ``contour`` (counter-clockwise)."""
    c, rho = contour.center, contour.radius
    mean, _ = adaptive_means(
        lambda z, u: g(z) * u, c, rho, contour.nodes, tol, max_nodes, adaptive
    )
    # dz = i rho u dtheta
    return complex(2j * np.pi * rho * mean[0])


def cauchy_coeff(
    g: Integrand,
    center: complex,
    radius: float,
    p: int,
    nodes: int = DEFAULT_NODES,
    tol: float = DEFAULT_TOL,
    max_nodes: int = MAX_NODES,
) -> complex:
    """p-th derivative of ``g`` at ``center`` from the Cauchy integral on a circle."""
    if p < 0:
        raise ValueError("derivative order must be nonnegative")
    CircleContour(center, radius, nodes)
    mean, _ = adaptive_means(lambda z, u: g(z) * u ** (-p), center, radius, nodes, tol, max_nodes)
    return complex(math.factorial(p) * mean[0] / radius**p)


def circle_moments(
    g: Integrand,
    center: complex,
    radius: float,
    orders: int,
    nodes: int = DEFAULT_NODES,
    tol: float = DEFAULT_TOL,
    max_nodes: int = MAX_NODES,
) -> tuple[np.ndarray, int]:
    """Scaled moments (2 pi i)^-1 * integral of g(z) ((z - c)/radius)^k dz, k = 0..orders.

    For g = f'/f these are the power sums of the scaled zeros inside the circle.
    """
    ks = np.arange(orders + 1)[:, None]

    def fn(z, u):
        return radius * g(z)[None, :] * u[None, :] ** (ks + 1)

    return adaptive_means(fn, center, radius, nodes, tol, max_nodes)
