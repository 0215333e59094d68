"""Built-in analyzing wavelets and their small-argument expansion data.

Each wavelet carries its conjugated Fourier transform, the Taylor
coefficients of that transform about zero (closed form and an independent
numeric extractor based on contour moments), and the exact tail left after
removing a truncated Taylor polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .backends import WAV_HAAR, WAV_MEXICAN_HAT, WAV_MORLET

_SQRT_2PI = math.sqrt(2.0 * math.pi)
_EPS = 2.220446049250313e-16
_I_POW = (1.0 + 0.0j, 0.0 + 1.0j, -1.0 + 0.0j, 0.0 - 1.0j)

_HAAR_SERIES_CUT = 1e-3
_TAIL_SERIES_CUT = 0.25
_TAIL_SERIES_TERMS = 14


class WaveletKind(Enum):
    Morlet = "morlet"
    MexicanHat = "mexhat"
    Haar = "haar"


@dataclass(frozen=True)
class WaveletSpec:
    """A concrete analyzing wavelet.

    ``lam`` is the leading power in the small-argument behaviour of the
    conjugated Fourier transform (all built-ins start at the linear order,
    so ``lam`` is 1 with the zeroth Taylor coefficient possibly vanishing).
    The envelope/support fields bound the time-domain wavelet for domain
    truncation; ``hat_sup`` bounds the conjugated transform on the real line.
    """

    kind: WaveletKind
    u0: float
    lam: int
    wav_id: int
    hat_sup: float
    time_envelope: Optional[tuple]
    time_support: Optional[tuple]


@dataclass(frozen=True)
class CoefficientTable:
    """Taylor coefficients c_0..c_{n-1} of the conjugated transform at zero."""

    coefficients: np.ndarray
    lam: int
    n: int
    error_estimates: Optional[np.ndarray] = None


def make_wavelet(kind: WaveletKind, u0: float = 5.0) -> WaveletSpec:
    if kind == WaveletKind.Morlet:
        if not u0 > 0.0:
            raise ValueError(f"the modulated-Gaussian wavelet needs u0 > 0, got {u0!r}")
        return WaveletSpec(
            kind=kind,
            u0=float(u0),
            lam=1,
            wav_id=WAV_MORLET,
            hat_sup=_SQRT_2PI,
            time_envelope=("gauss", 1.0, 0.25),
            time_support=None,
        )
    if kind == WaveletKind.MexicanHat:
        return WaveletSpec(
            kind=kind,
            u0=0.0,
            lam=1,
            wav_id=WAV_MEXICAN_HAT,
            hat_sup=_SQRT_2PI * 2.0 / math.e,
            time_envelope=("gauss", 2.0, 0.25),
            time_support=None,
        )
    if kind == WaveletKind.Haar:
        return WaveletSpec(
            kind=kind,
            u0=0.0,
            lam=1,
            wav_id=WAV_HAAR,
            hat_sup=0.7246113537767084,
            time_envelope=None,
            time_support=(0.0, 1.0),
        )
    raise ValueError(f"unknown wavelet kind {kind!r}")


def _haar_series_coefficients(n: int) -> np.ndarray:
    out = np.zeros(n, dtype=complex)
    for s in range(1, n):
        out[s] = _I_POW[(s + 2) % 4] * (1.0 - 2.0 ** (-s)) / math.factorial(s + 1)
    return out


def psi_hat_conj(spec: WaveletSpec, u) -> np.ndarray:
    """Conjugated Fourier transform of the wavelet, complex-argument capable."""
    u = np.asarray(u, dtype=complex)
    if spec.kind == WaveletKind.Morlet:
        d = u - spec.u0
        return _SQRT_2PI * np.exp(-0.5 * d * d)
    if spec.kind == WaveletKind.MexicanHat:
        return _SQRT_2PI * u * u * np.exp(-0.5 * u * u)
    out = np.empty(u.shape, dtype=complex)
    small = np.abs(u) < _HAAR_SERIES_CUT
    cs = _haar_series_coefficients(8)
    acc = np.zeros(np.count_nonzero(small), dtype=complex)
    for c in cs[::-1]:
        acc = acc * u[small] + c
    out[small] = acc
    ub = u[~small]
    q = np.sin(0.25 * ub)
    out[~small] = -4j * np.exp(0.5j * ub) * q * q / ub
    return out


def small_u_coefficients(spec: WaveletSpec, n: int) -> CoefficientTable:
    """Closed-form Taylor coefficients c_0..c_{n-1} at zero argument."""
    if n < 1:
        raise ValueError("need at least one coefficient")
    cs = np.zeros(n, dtype=complex)
    if spec.kind == WaveletKind.Morlet:
        # c_s = sqrt(2*pi) * exp(-u0**2/2) * He_s(u0) / s! with the
        # probabilists' Hermite polynomials by their three-term recurrence.
        x = spec.u0
        pre = _SQRT_2PI * math.exp(-0.5 * x * x)
        he = np.zeros(n)
        he[0] = 1.0
        if n > 1:
            he[1] = x
        for s in range(2, n):
            he[s] = x * he[s - 1] - (s - 1) * he[s - 2]
        for s in range(n):
            cs[s] = pre * he[s] / math.factorial(s)
    elif spec.kind == WaveletKind.MexicanHat:
        for s in range(2, n, 2):
            l = s // 2
            cs[s] = _SQRT_2PI * (-1.0) ** (l - 1) / (2.0 ** (l - 1) * math.factorial(l - 1))
    else:
        cs = _haar_series_coefficients(n)
    return CoefficientTable(coefficients=cs, lam=spec.lam, n=n)


def small_u_coefficients_numeric(
    spec: WaveletSpec, n: int, radius: float = 0.5, points: int = 128
) -> CoefficientTable:
    """Taylor coefficients extracted from contour moments of the transform.

    Moments of psi_hat_conj on two circles (radius and radius/2) are combined
    to cancel the leading aliasing term of the discrete moment sum; the
    spread between the two circles provides the per-coefficient error
    estimate.  Raises if the combination fails to settle, which catches
    transforms that are not analytic on the contour.
    """
    if n < 1:
        raise ValueError("need at least one coefficient")
    if points <= n:
        raise ValueError("need more contour points than coefficients")
    k = np.arange(points)
    theta = 2.0 * np.pi * k / points
    rot = np.exp(1j * theta)

    def moments(r: float) -> np.ndarray:
        vals = psi_hat_conj(spec, r * rot)
        coef = np.fft.fft(vals) / points
        return coef[:n] / r ** np.arange(n)

    m1 = moments(radius)
    m2 = moments(0.5 * radius)
    # Aliasing in the discrete moments scales as radius**points; one
    # extrapolation step against the half-radius contour removes it.
    denom = 2.0 ** points - 1.0
    combined = m2 + (m2 - m1) / denom
    scale = float(np.max(np.abs(psi_hat_conj(spec, radius * rot))))
    spread = np.abs(m2 - m1) / denom
    round_off = 10.0 * _EPS * scale / (0.5 * radius) ** np.arange(n)
    errs = spread + round_off
    bad = errs > 1e-6 * np.maximum(1.0, np.abs(combined))
    if np.any(bad):
        worst = int(np.argmax(errs / np.maximum(1.0, np.abs(combined))))
        raise ValueError(
            "contour moments did not settle at order "
            f"{worst} (error estimate {errs[worst]:.3e}); the transform is "
            "not analytic enough on the contour"
        )
    return CoefficientTable(
        coefficients=combined, lam=spec.lam, n=n, error_estimates=errs
    )


def psi_hat_tail(spec: WaveletSpec, n: int, u) -> np.ndarray:
    """The transform with its first n Taylor terms removed.

    For small arguments the direct subtraction cancels catastrophically, so
    the tail is summed from the higher-order coefficients instead.
    """
    u = np.asarray(u, dtype=float)
    out = np.empty(u.shape, dtype=complex)
    table = small_u_coefficients(spec, n + _TAIL_SERIES_TERMS)
    cs = table.coefficients
    small = np.abs(u) < _TAIL_SERIES_CUT
    us = u[small]
    acc = np.zeros(us.shape, dtype=complex)
    for c in cs[n:][::-1]:
        acc = acc * us + c
    out[small] = acc * us ** n
    ub = u[~small]
    poly = np.zeros(ub.shape, dtype=complex)
    for c in cs[:n][::-1]:
        poly = poly * ub + c
    out[~small] = psi_hat_conj(spec, ub) - poly
    return out
