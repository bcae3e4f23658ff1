"""Kernel backend selection.

The compiled extension is preferred; setting ``DINTIME_PURE_PYTHON=1`` or a
missing build falls back to the NumPy implementation.
"""
import os

from . import _pykernels

BACKENDS = {"python": _pykernels}

try:
    from . import _ckernels
except ImportError:
    _ckernels = None
else:
    BACKENDS["cython"] = _ckernels

if _ckernels is not None and not os.environ.get("DINTIME_PURE_PYTHON"):
    kernels = _ckernels
    BACKEND = "cython"
else:
    kernels = _pykernels
    BACKEND = "python"
