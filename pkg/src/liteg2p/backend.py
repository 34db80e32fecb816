"""Kernel backend selection and numeric precision control.

The hot kernels (CTC forward/backward and the GRU recurrences) exist twice:
a compiled Cython extension (``liteg2p._ckernels``) and a pure-numpy
fallback (``liteg2p._kernels_py``).  The compiled one is picked at import
when present; ``LITEG2P_BACKEND=python|cython`` forces a choice.

Training runs in float32 by default.  ``LITEG2P_PRECISION=f64`` (or
``set_precision("f64")``) switches every new array to float64, which the
verification suites use for finite-difference checks.
"""

import os

import numpy as np

from . import _kernels_py

_PRECISIONS = {"f32": np.float32, "f64": np.float64}

_precision = os.environ.get("LITEG2P_PRECISION", "f32").lower()
if _precision not in _PRECISIONS:
    raise RuntimeError(f"LITEG2P_PRECISION must be f32 or f64, got {_precision!r}")

try:
    from . import _ckernels
except ImportError:
    _ckernels = None

_requested = os.environ.get("LITEG2P_BACKEND", "").lower()
if _requested == "cython" and _ckernels is None:
    raise RuntimeError("LITEG2P_BACKEND=cython but the compiled extension is not built")
if _requested == "python":
    _kernels = _kernels_py
elif _requested == "cython":
    _kernels = _ckernels
else:
    _kernels = _ckernels if _ckernels is not None else _kernels_py


def real_dtype():
    """dtype used for parameters and activations."""
    return _PRECISIONS[_precision]


def set_precision(name):
    global _precision
    if name not in _PRECISIONS:
        raise ValueError(f"precision must be one of {sorted(_PRECISIONS)}, got {name!r}")
    _precision = name


def precision():
    return _precision


def available_backends():
    names = ["python"]
    if _ckernels is not None:
        names.append("cython")
    return names


def backend_name():
    return "cython" if _kernels is _ckernels and _ckernels is not None else "python"


def use_backend(name):
    """Switch the kernel implementation at runtime (used by tests and benchmarks)."""
    global _kernels
    if name == "python":
        _kernels = _kernels_py
    elif name == "cython":
        if _ckernels is None:
            raise RuntimeError("compiled extension not available")
        _kernels = _ckernels
    else:
        raise ValueError(f"unknown backend {name!r}")


def kernels():
    return _kernels
