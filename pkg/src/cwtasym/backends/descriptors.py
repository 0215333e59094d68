"""Descriptors for the built-in integrand families evaluated by the backends.

A KernelDescriptor is a flat, hashable recipe for one of the hot integrands:
the signal/wavelet products of the CWT oracle, the regularized Mellin
h-integrand, and the wavelet time-domain moment integrand.  Both backends
(numpy and the compiled extension) evaluate exactly the same recipes, so the
adaptive quadrature driver never needs to know which one is active.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

# integrand families
FAM_CWT_TIME = 0      # f(b + a*s) * conj(psi(s))                    iparams=(sig, wav)       fparams=(a, b, u0)
FAM_CWT_FOURIER = 1   # e^{i s b w} f^(s w) conj(psihat(s a w))      iparams=(sig, wav, sign) fparams=(a, b, u0)
FAM_MELLIN_H = 2      # u^{z-1} e^{i s b u} f^(s u) e^{-eps u}       iparams=(sig, sign)      fparams=(b, zr, zi, eps)
FAM_PSI_MOMENT = 3    # t^{z-1} * conj(psi)(s t)                     iparams=(wav, sign)      fparams=(u0, zr, zi)

# built-in signal ids
SIG_LORENTZIAN = 0
SIG_TWO_SIDED_EXP = 1
SIG_GAUSSIAN = 2

# built-in wavelet ids
WAV_MORLET = 0
WAV_MEXICAN_HAT = 1
WAV_HAAR = 2


@dataclass(frozen=True)
class KernelDescriptor:
    family: int
    iparams: tuple[int, ...]
    fparams: tuple[float, ...]
    square_sub: bool = False

    def squared(self) -> "KernelDescriptor":
        """Descriptor for the x -> x^2 substituted integrand 2x*f(x^2)."""
        return replace(self, square_sub=True)


def cwt_time_descriptor(sig: int, wav: int, a: float, b: float, u0: float) -> KernelDescriptor:
    return KernelDescriptor(FAM_CWT_TIME, (sig, wav), (a, b, u0))


def cwt_fourier_descriptor(
    sig: int, wav: int, sign: int, a: float, b: float, u0: float
) -> KernelDescriptor:
    return KernelDescriptor(FAM_CWT_FOURIER, (sig, wav, sign), (a, b, u0))


def mellin_h_descriptor(
    sig: int, sign: int, b: float, z: complex, eps: float = 0.0
) -> KernelDescriptor:
    return KernelDescriptor(FAM_MELLIN_H, (sig, sign), (b, z.real, z.imag, eps))


def psi_moment_descriptor(wav: int, sign: int, u0: float, z: complex) -> KernelDescriptor:
    return KernelDescriptor(FAM_PSI_MOMENT, (wav, sign), (u0, z.real, z.imag))
