"""Kernel backend selection.

The hot inner loops (compression fixed points and the product-search
scans) ship in two interchangeable implementations:

* ``numba_kernels`` -- @njit-compiled loops, the default when numba imports;
* ``numpy_kernels`` -- a numba-free fallback on vectorized numpy (plus
  plain-int loops where families are too small for vectorization to pay).

Both follow the same deterministic enumeration orders, so results are
bit-identical.  Select explicitly with ``CROSSFAM_BACKEND=numba|numpy``
(anything else, or unset, means auto).
"""

import os

from ..errors import ParameterError
from . import numpy_kernels

_cached = None
_cached_name = None


def _load(name):
    if name == "numpy":
        return numpy_kernels
    if name == "numba":
        from . import numba_kernels
        return numba_kernels
    raise ParameterError(f"unknown backend {name!r} (use 'numba' or 'numpy')")


def _env_choice():
    raw = os.environ.get("CROSSFAM_BACKEND", "auto").strip().lower() or "auto"
    if raw == "auto":
        try:
            import numba  # noqa: F401
            return "numba"
        except ImportError:
            return "numpy"
    return raw


def kernels():
    """Active kernel module (resolved once, then cached)."""
    global _cached, _cached_name
    if _cached is None:
        name = _env_choice()
        _cached = _load(name)
        _cached_name = name
    return _cached


def active_backend() -> str:
    kernels()
    return _cached_name


def set_backend(name):
    """Force a backend by name, or pass None to re-read the environment."""
    global _cached, _cached_name
    if name is None:
        _cached = None
        _cached_name = None
    else:
        _cached = _load(name)
        _cached_name = name
