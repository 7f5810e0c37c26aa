"""Backend selection for the hot loops.

The compiled extension is used when it imports; ``HEXDEP_PURE_PYTHON=1``
forces the numpy fallback.  Both backends expose::

    quad_integrand(px, py, gamma, cx2, cy2) -> float array
    classify(s1x, s1y, s2x, s2y, gamma, cx2, cy2) -> int8 array of 0/1/2/3
"""
import os

from . import _pykernels

_backend = _pykernels
if os.environ.get("HEXDEP_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _backend  # type: ignore[no-redef]
    except ImportError:
        pass

BACKEND = _backend.NAME
quad_integrand = _backend.quad_integrand
classify = _backend.classify


def available_backends():
    """Map backend name to module for every backend importable here."""
    found = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        found["cython"] = _ckernels
    return found
