"""Hot evaluation kernels with a selectable backend.

The backend is chosen once at import time from ``PICARDSCAN_BACKEND``:
``numba`` (default when numba imports) or ``numpy``. Both backends expose the
same functions operating on 1-D ``complex128`` arrays; the wrappers here accept
scalars or arrays of any shape.
"""

import importlib
import logging
import os

import numpy as np

from .codes import DISCRETE, EXAMPLE2, EXAMPLE3, EXAMPLE4, LINEAR, QUADRATIC

__all__ = [
    "BACKEND",
    "DISCRETE",
    "EXAMPLE2",
    "EXAMPLE3",
    "EXAMPLE4",
    "LINEAR",
    "QUADRATIC",
    "derivatives",
    "erf",
    "erfcx",
    "get_backend",
    "log_derivatives",
    "values",
]

logger = logging.getLogger(__name__)

_NAMES = ("numba", "numpy")


def get_backend(name):
    """Return the kernel module for ``name`` ("numba" or "numpy")."""
    if name not in _NAMES:
        raise ValueError(f"unknown kernel backend {name!r}; expected one of {_NAMES}")
    return importlib.import_module(f"{__name__}._{name}")


def _select():
    requested = os.environ.get("PICARDSCAN_BACKEND", "numba").strip().lower() or "numba"
    if requested == "numba":
        try:
            return "numba", get_backend("numba")
        except ImportError:
            logger.warning("numba unavailable, falling back to numpy kernels")
            return "numpy", get_backend("numpy")
    return requested, get_backend(requested)


BACKEND, _impl = _select()


def _call(fn, z, *args):
    arr = np.asarray(z, dtype=np.complex128)
    flat = np.ascontiguousarray(arr.reshape(-1))
    out = fn(*args, flat)
    if arr.ndim == 0:
        return complex(out[0])
    return out.reshape(arr.shape)


def values(kind, kp, w, z):
    return _call(_impl.values, z, kind, kp, complex(w))


def derivatives(kind, kp, w, z):
    return _call(_impl.derivatives, z, kind, kp, complex(w))


def log_derivatives(kind, kp, w, shift, z):
    """f_z / (f - shift) evaluated without intermediate overflow."""
    return _call(_impl.log_derivatives, z, kind, kp, complex(w), complex(shift))


def erf(z):
    return _call(_impl.erf, z)


def erfcx(z):
    """exp(z**2) erfc(z), valid for Re z >= 0."""
    return _call(_impl.erfcx, z)
