"""Points of the Riemann sphere and the chordal metric."""

from __future__ import annotations

import math
from typing import Union


class _Infinity:
    """The point at infinity. Use the module singleton ``INFINITY``."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()

SphereValue = Union[complex, _Infinity]


def is_infinity(a) -> bool:
    return a is INFINITY


def as_sphere_value(a) -> SphereValue:
    """Coerce numbers (and the string ``"inf"``) to a sphere point."""
    if a is INFINITY or (isinstance(a, str) and a.strip().lower() == "inf"):
        return INFINITY
    a = complex(a)
    if not (math.isfinite(a.real) and math.isfinite(a.imag)):
        return INFINITY
    return a


def chordal_distance(a: SphereValue, b: SphereValue) -> float:
    """Chordal distance 2|a-b| / (sqrt(1+|a|^2) sqrt(1+|b|^2)), in [0, 2]."""
    a = as_sphere_value(a)
    b = as_sphere_value(b)
    if a is INFINITY and b is INFINITY:
        return 0.0
    if a is INFINITY:
        a, b = b, a
    if b is INFINITY:
        return 2.0 / math.sqrt(1.0 + abs(a) ** 2)
    return 2.0 * abs(a - b) / (math.sqrt(1.0 + abs(a) ** 2) * math.sqrt(1.0 + abs(b) ** 2))
