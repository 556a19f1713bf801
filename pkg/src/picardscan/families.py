"""Holomorphic families f(z, w) of entire functions.

The catalog holds the four worked examples (``example1`` .. ``example4``), two
polynomial test families (``linear``, ``quadratic``) and the constructor
``discrete_exceptional`` whose zero-free parameters are a prescribed finite
set. Evaluation is delegated to :mod:`picardscan.kernels`.
"""

from __future__ import annotations

import dataclasses
import math
import re
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, Optional, Sequence

import numpy as np

from . import kernels
from .errors import DomainError, UnknownFamily
from .sphere import INFINITY, SphereValue

ExceptionalFn = Callable[[complex], SphereValue]


@dataclass(frozen=True)
class ParametricFamily:
    key: str
    kind: int
    params: Mapping[str, Any] = field(default_factory=dict)
    order_bound: Optional[float] = None
    known_exceptional: Optional[ExceptionalFn] = field(default=None, compare=False)
    domain_note: str = "D = C"
    kernel_params: np.ndarray = field(
        default_factory=lambda: np.zeros(0, dtype=np.complex128), repr=False, compare=False
    )

    def eval(self, z, w):
        _check_point(z, w)
        return kernels.values(self.kind, self.kernel_params, w, z)

    def eval_dz(self, z, w):
        _check_point(z, w)
        return kernels.derivatives(self.kind, self.kernel_params, w, z)

    def log_derivative(self, z, w, shift=0.0):
        """f_z / (f - shift), computed in a form that avoids overflow of f."""
        return kernels.log_derivatives(self.kind, self.kernel_params, w, shift, z)

    @property
    def order_label(self) -> str:
        return "unknown" if self.order_bound is None else f"{self.order_bound:g}"

    def exceptional_set_at(self, w) -> list:
        """A(w) as far as the metadata knows it: a(w) if supplied, and infinity."""
        points = [INFINITY]
        if self.known_exceptional is not None:
            a = self.known_exceptional(complex(w))
            if a is not INFINITY:
                points.insert(0, a)
        return points


def _check_point(z, w):
    zz = np.asarray(z, dtype=np.complex128)
    if not (np.all(np.isfinite(zz)) and math.isfinite(complex(w).real) and math.isfinite(complex(w).imag)):
        raise DomainError(f"non-finite argument (z={z!r}, w={w!r})")


def _a_at_origin_only(value: complex) -> ExceptionalFn:
    def a(w: complex) -> SphereValue:
        return value if w == 0 else INFINITY

    return a


def _minus_inverse(at_zero: SphereValue) -> ExceptionalFn:
    def a(w: complex) -> SphereValue:
        return at_zero if w == 0 else -1.0 / complex(w)

    return a


def make_discrete_exceptional_family(points: Sequence[tuple[complex, int]]) -> ParametricFamily:
    """Family e^z + z * prod (w - p_i)^m_i, zero-free exactly over the points p_i.

    Fibers with g(w) != 0 have infinitely many zeros; fibers over p_i reduce to
    e^z.
    """
    pts = [(complex(p), int(m)) for p, m in points]
    locs = [p for p, _ in pts]
    if len(set(locs)) != len(locs):
        raise DomainError(f"duplicate points in {locs}")
    if any(m < 1 for _, m in pts):
        raise DomainError("multiplicities must be positive integers")
    expanded = np.array([p for p, m in pts for _ in range(m)], dtype=np.complex128)
    zero_set = frozenset(locs)

    def a(w: complex) -> SphereValue:
        return 0j if complex(w) in zero_set else INFINITY

    params = {}
    for i, (p, m) in enumerate(pts):
        params[f"p{i}"] = p
        params[f"m{i}"] = m
    return ParametricFamily(
        key="discrete_exceptional",
        kind=kernels.DISCRETE,
        params=params,
        order_bound=1.0,
        known_exceptional=a,
        domain_note=(
            "D = C; fibers over the points p_i are e^z (zero-free), all other fibers "
            "have infinitely many zeros"
        ),
        kernel_params=expanded,
    )


def _example1() -> ParametricFamily:
    fam = make_discrete_exceptional_family([(0j, 1)])
    return dataclasses.replace(
        fam,
        key="example1",
        params={},
        known_exceptional=_a_at_origin_only(0j),
        domain_note="f = e^z + w z on D = C; the fiber over w = 0 omits 0",
    )


def _example2() -> ParametricFamily:
    return ParametricFamily(
        key="example2",
        kind=kernels.EXAMPLE2,
        order_bound=1.0,
        known_exceptional=_minus_inverse(INFINITY),
        domain_note="f = (e^{wz} - 1)/w on D = C, f(z, 0) = z by continuity",
    )


def _example3() -> ParametricFamily:
    return ParametricFamily(
        key="example3",
        kind=kernels.EXAMPLE3,
        order_bound=2.0,
        known_exceptional=_a_at_origin_only(0j),
        domain_note=(
            "f = integral of (t + w) e^{-t^2/2} from -inf to z on D = C; "
            "closed form -e^{-z^2/2} + w sqrt(pi/2) (1 + erf(z/sqrt 2))"
        ),
    )


def _example4() -> ParametricFamily:
    return ParametricFamily(
        key="example4",
        kind=kernels.EXAMPLE4,
        order_bound=None,
        known_exceptional=_minus_inverse(0j),
        domain_note="f = (e^{w e^z} - 1)/w on D = C, f(z, 0) = e^z by continuity; infinite order",
    )


def _linear() -> ParametricFamily:
    return ParametricFamily(key="linear", kind=kernels.LINEAR, order_bound=0.0, domain_note="f = z - w on D = C")


def _quadratic() -> ParametricFamily:
    return ParametricFamily(
        key="quadratic", kind=kernels.QUADRATIC, order_bound=0.0, domain_note="f = z^2 - w on D = C"
    )


_POINT_KEY = re.compile(r"^p(\d+)$")
_MULT_KEY = re.compile(r"^m(\d+)$")


def _discrete_from_params(params: Mapping[str, Any]) -> ParametricFamily:
    points, mults = {}, {}
    for name, value in params.items():
        if m := _POINT_KEY.match(name):
            points[int(m.group(1))] = parse_complex(value)
        elif m := _MULT_KEY.match(name):
            mults[int(m.group(1))] = int(value)
        else:
            raise DomainError(f"unknown parameter {name!r} for discrete_exceptional")
    stray = set(mults) - set(points)
    if stray:
        raise DomainError(f"multiplicities without points: {sorted(stray)}")
    return make_discrete_exceptional_family([(points[i], mults.get(i, 1)) for i in sorted(points)])


def _no_params(builder):
    def build(params: Mapping[str, Any]) -> ParametricFamily:
        if params:
            raise DomainError(f"family takes no parameters, got {sorted(params)}")
        return builder()

    return build


CATALOG: dict[str, Callable[[Mapping[str, Any]], ParametricFamily]] = {
    "discrete_exceptional": _discrete_from_params,
    "example1": _no_params(_example1),
    "example2": _no_params(_example2),
    "example3": _no_params(_example3),
    "example4": _no_params(_example4),
    "linear": _no_params(_linear),
    "quadratic": _no_params(_quadratic),
}

EXCEPTIONAL_NOTES = {
    "discrete_exceptional": "a(p_i) = 0",
    "example1": "a(0) = 0",
    "example2": "a(w) = -1/w for w != 0",
    "example3": "a(0) = 0",
    "example4": "a(w) = -1/w, a(0) = 0",
    "linear": "-",
    "quadratic": "-",
}

PARAM_SCHEMAS = {
    "discrete_exceptional": "p<i>: [re, im] point, m<i>: multiplicity (default 1)",
}


def get_family(key: str, params: Optional[Mapping[str, Any]] = None) -> ParametricFamily:
    try:
        builder = CATALOG[key]
    except KeyError:
        raise UnknownFamily(f"unknown family {key!r}; known: {sorted(CATALOG)}") from None
    return builder(dict(params or {}))


def parse_complex(value) -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise DomainError(f"complex parameter must be [re, im], got {value!r}")
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, (int, float, complex)):
        return complex(value)
    raise DomainError(f"cannot read a complex number from {value!r}")


def family_from_spec(spec: Mapping[str, Any]) -> ParametricFamily:
    """Build a family from ``{"key": ..., "params": {...}}``."""
    if "key" not in spec:
        raise DomainError("family spec needs a 'key'")
    return get_family(spec["key"], spec.get("params") or {})


def family_to_spec(family: ParametricFamily) -> dict:
    params = {}
    for name, value in family.params.items():
        if isinstance(value, complex):
            params[name] = [value.real, value.imag]
        else:
            params[name] = value
    return {"key": family.key, "params": params}


def _resolve(family) -> ParametricFamily:
    return get_family(family) if isinstance(family, str) else family


def eval(family, z, w):  # noqa: A001 - mirrors the family method
    """f(z, w) for a family object or catalog key."""
    return _resolve(family).eval(z, w)


def eval_dz(family, z, w):
    return _resolve(family).eval_dz(z, w)


def complex_erf(z):
    """Complex error function (2/sqrt(pi)) * integral_0^z exp(-t^2) dt.

    Accurate to about 1e-13 relative on |z| <= 12, away from the zeros of erf.
    """
    return kernels.erf(z)
