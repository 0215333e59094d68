"""Pure-numpy evaluation of the built-in integrand families.

This is the fallback backend; the compiled extension implements the same
`eval_kernel` contract with identical constants, so results agree to rounding.
"""

from __future__ import annotations

import numpy as np

from .descriptors import (
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
)

name = "numpy"

_SQRT_2PI = 2.5066282746310002

# Taylor coefficients of conj(psihat_haar)(u) = -4i exp(iu/2) sin^2(u/4) / u
# about u = 0; used below the series cutover to avoid 0/0 cancellation.
_HAAR_SERIES_CUT = 1e-3
_HAAR_C = (
    0.0 + 0.0j,
    0.0 - 0.25j,
    0.125 + 0.0j,
    0.0 + 7j / 192.0,
    -0.0078125 + 0.0j,
    0.0 - 31j / 23040.0,
    0.000195312500 + 0.0j,
    0.0 + 127j / 5160960.0,
)


def _signal_time(sig: int, t: np.ndarray) -> np.ndarray:
    if sig == SIG_LORENTZIAN:
        return 1.0 / (1.0 + t * t)
    if sig == SIG_TWO_SIDED_EXP:
        return np.exp(-np.abs(t))
    if sig == SIG_GAUSSIAN:
        return np.exp(-0.5 * t * t)
    raise ValueError(f"unknown signal id {sig}")


def _signal_fourier(sig: int, w: np.ndarray) -> np.ndarray:
    if sig == SIG_LORENTZIAN:
        return np.pi * np.exp(-np.abs(w))
    if sig == SIG_TWO_SIDED_EXP:
        return 2.0 / (1.0 + w * w)
    if sig == SIG_GAUSSIAN:
        return _SQRT_2PI * np.exp(-0.5 * w * w)
    raise ValueError(f"unknown signal id {sig}")


def _wavelet_time_conj(wav: int, s: np.ndarray, u0: float) -> np.ndarray:
    if wav == WAV_MORLET:
        return np.exp(-1j * u0 * s - 0.5 * s * s)
    if wav == WAV_MEXICAN_HAT:
        return ((1.0 - s * s) * np.exp(-0.5 * s * s)).astype(complex)
    if wav == WAV_HAAR:
        out = np.zeros(s.shape, dtype=complex)
        out[(s >= 0.0) & (s < 0.5)] = 1.0
        out[(s >= 0.5) & (s < 1.0)] = -1.0
        return out
    raise ValueError(f"unknown wavelet id {wav}")


def _haar_hat_conj(u: np.ndarray) -> np.ndarray:
    out = np.empty(u.shape, dtype=complex)
    small = np.abs(u) < _HAAR_SERIES_CUT
    us = u[small]
    acc = np.zeros(us.shape, dtype=complex)
    for c in reversed(_HAAR_C):
        acc = acc * us + c
    out[small] = acc
    ub = u[~small]
    q = np.sin(0.25 * ub)
    out[~small] = -4j * np.exp(0.5j * ub) * q * q / ub
    return out


def _wavelet_fourier_conj(wav: int, u: np.ndarray, u0: float) -> np.ndarray:
    if wav == WAV_MORLET:
        d = u - u0
        return (_SQRT_2PI * np.exp(-0.5 * d * d)).astype(complex)
    if wav == WAV_MEXICAN_HAT:
        return (_SQRT_2PI * u * u * np.exp(-0.5 * u * u)).astype(complex)
    if wav == WAV_HAAR:
        return _haar_hat_conj(u)
    raise ValueError(f"unknown wavelet id {wav}")


def _cpow(x: np.ndarray, zm1: complex) -> np.ndarray:
    """x**zm1 for x > 0 with complex exponent, vectorized."""
    if zm1 == 0:
        return np.ones(x.shape, dtype=complex)
    return np.exp(zm1 * np.log(x))


def eval_kernel(desc: KernelDescriptor, x: np.ndarray) -> np.ndarray:
    """Evaluate the described integrand at real nodes `x` (complex output)."""
    x = np.asarray(x, dtype=float)
    if desc.square_sub:
        inner = eval_kernel(
            KernelDescriptor(desc.family, desc.iparams, desc.fparams, False), x * x
        )
        return 2.0 * x * inner

    fam = desc.family
    if fam == FAM_CWT_TIME:
        sig, wav = desc.iparams
        a, b, u0 = desc.fparams
        return _signal_time(sig, b + a * x) * _wavelet_time_conj(wav, x, u0)

    if fam == FAM_CWT_FOURIER:
        sig, wav, sign = desc.iparams
        a, b, u0 = desc.fparams
        w = sign * x
        phase = np.exp(1j * b * w)
        return phase * _signal_fourier(sig, w) * _wavelet_fourier_conj(wav, a * w, u0)

    if fam == FAM_MELLIN_H:
        sig, sign = desc.iparams
        b, zr, zi, eps = desc.fparams
        out = _cpow(x, complex(zr - 1.0, zi))
        out = out * np.exp(1j * (sign * b) * x)
        out = out * _signal_fourier(sig, sign * x)
        if eps != 0.0:
            out = out * np.exp(-eps * x)
        return out

    if fam == FAM_PSI_MOMENT:
        wav, sign = desc.iparams
        u0, zr, zi = desc.fparams
        return _cpow(x, complex(zr - 1.0, zi)) * _wavelet_time_conj(wav, sign * x, u0)

    raise ValueError(f"unknown integrand family {fam}")
