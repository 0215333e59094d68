"""Continuous wavelet transforms by quadrature and small-dilation asymptotic expansions.

The package evaluates the wavelet transform W(b, a) two independent ways — a
ground-truth adaptive quadrature oracle (time domain and Fourier domain) and a
truncated small-a expansion built from wavelet coefficient tables and
regularized Mellin moments — and provides the diagnostics that compare them.
"""

from .quadrature import QuadratureConfig, QuadratureError, QuadratureResult, integrate
from .signals import (
    SignalKind,
    SignalSpec,
    HSpec,
    make_signal,
    custom_signal,
    make_h,
    f_hat,
    h_eval,
    time_coefficients,
)
from .specfun import (
    SpecFunError,
    SpecFunResult,
    gamma_complex,
    upper_incomplete_gamma,
    parabolic_cylinder_D,
)
from .wavelets import (
    WaveletKind,
    WaveletSpec,
    CoefficientTable,
    make_wavelet,
    psi_hat_conj,
    small_u_coefficients,
    small_u_coefficients_numeric,
    psi_hat_tail,
)
from .oracle import cwt_time, cwt_fourier
from .mellin import (
    MellinError,
    MellinMethod,
    MellinValue,
    mellin_transform,
    mellin_morlet_time,
)
from .expansion import (
    ExpansionResult,
    RemainderKind,
    expand_frequency,
    remainder_frequency,
    expand_time,
    expand_morlet_time,
    convergence_order,
)
from .checks import available_checks, run_all, run_check

__version__ = "0.1.0"

__all__ = [
    "QuadratureConfig",
    "QuadratureError",
    "QuadratureResult",
    "integrate",
    "SignalKind",
    "SignalSpec",
    "HSpec",
    "make_signal",
    "custom_signal",
    "make_h",
    "f_hat",
    "h_eval",
    "time_coefficients",
    "SpecFunError",
    "SpecFunResult",
    "gamma_complex",
    "upper_incomplete_gamma",
    "parabolic_cylinder_D",
    "WaveletKind",
    "WaveletSpec",
    "CoefficientTable",
    "make_wavelet",
    "psi_hat_conj",
    "small_u_coefficients",
    "small_u_coefficients_numeric",
    "psi_hat_tail",
    "cwt_time",
    "cwt_fourier",
    "MellinError",
    "MellinMethod",
    "MellinValue",
    "mellin_transform",
    "mellin_morlet_time",
    "ExpansionResult",
    "RemainderKind",
    "expand_frequency",
    "remainder_frequency",
    "expand_time",
    "expand_morlet_time",
    "convergence_order",
    "available_checks",
    "run_all",
    "run_check",
    "__version__",
]
