"""Backend selection for the hot integrand kernels.

The compiled extension is preferred when it imported cleanly; the pure-numpy
implementation is always available.  Set CWTASYM_BACKEND=numpy|cython before
import to force one, or call set_backend() at runtime (used by the benchmark
and the parity tests).
"""

from __future__ import annotations

import os

from . import numpy_backend
from .descriptors import (  # noqa: F401  (re-exported for callers)
    FAM_CWT_FOURIER,
    FAM_CWT_TIME,
    FAM_MELLIN_H,
    FAM_PSI_MOMENT,
    KernelDescriptor,
    SIG_GAUSSIAN,
    SIG_LORENTZIAN,
    SIG_TWO_SIDED_EXP,
    WAV_HAAR,
    WAV_MEXICAN_HAT,
    WAV_MORLET,
    cwt_fourier_descriptor,
    cwt_time_descriptor,
    mellin_h_descriptor,
    psi_moment_descriptor,
)

try:
    from . import _kernels as _cython_backend
except ImportError:
    _cython_backend = None

_BACKENDS = {"numpy": numpy_backend}
if _cython_backend is not None:
    _BACKENDS["cython"] = _cython_backend


def _default_backend():
    forced = os.environ.get("CWTASYM_BACKEND", "").strip().lower()
    if forced:
        if forced not in _BACKENDS:
            available = ", ".join(sorted(_BACKENDS))
            raise ImportError(
                f"CWTASYM_BACKEND={forced!r} is not available (choices: {available})"
            )
        return _BACKENDS[forced]
    return _BACKENDS.get("cython", numpy_backend)


_active = _default_backend()


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def backend_name() -> str:
    """Name of the backend currently evaluating the built-in kernels."""
    return _active.name


def set_backend(name: str) -> str:
    """Switch the active kernel backend; returns the previous backend's name."""
    global _active
    if name not in _BACKENDS:
        available = ", ".join(sorted(_BACKENDS))
        raise ValueError(f"unknown backend {name!r} (choices: {available})")
    previous = _active.name
    _active = _BACKENDS[name]
    return previous


def eval_kernel(desc: KernelDescriptor, x):
    """Evaluate a built-in integrand descriptor at the given real nodes."""
    return _active.eval_kernel(desc, x)
