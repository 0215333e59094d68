# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled evaluation of the built-in integrand families.

Mirrors numpy_backend.eval_kernel exactly (same formulas, same constants);
the two are cross-checked by the parity tests.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, fabs, log, sin, cos

cnp.import_array()

name = "cython"

cdef double _SQRT_2PI = 2.5066282746310002
cdef double _HAAR_SERIES_CUT = 1e-3

cdef int FAM_CWT_TIME = 0
cdef int FAM_CWT_FOURIER = 1
cdef int FAM_MELLIN_H = 2
cdef int FAM_PSI_MOMENT = 3

cdef int SIG_LORENTZIAN = 0
cdef int SIG_TWO_SIDED_EXP = 1
cdef int SIG_GAUSSIAN = 2

cdef int WAV_MORLET = 0
cdef int WAV_MEXICAN_HAT = 1
cdef int WAV_HAAR = 2

cdef double complex _HAAR_C0 = 0.0
cdef double complex _HAAR_C1 = -0.25j
cdef double complex _HAAR_C2 = 0.125
cdef double complex _HAAR_C3 = 7j / 192.0
cdef double complex _HAAR_C4 = -0.0078125
cdef double complex _HAAR_C5 = -31j / 23040.0
cdef double complex _HAAR_C6 = 0.000195312500
cdef double complex _HAAR_C7 = 127j / 5160960.0


cdef inline double complex _cis(double t):
    return cos(t) + 1j * sin(t)


cdef inline double _signal_time(int sig, double t):
    if sig == SIG_LORENTZIAN:
        return 1.0 / (1.0 + t * t)
    elif sig == SIG_TWO_SIDED_EXP:
        return exp(-fabs(t))
    else:
        return exp(-0.5 * t * t)


cdef inline double _signal_fourier(int sig, double w):
    if sig == SIG_LORENTZIAN:
        return 3.141592653589793 * exp(-fabs(w))
    elif sig == SIG_TWO_SIDED_EXP:
        return 2.0 / (1.0 + w * w)
    else:
        return _SQRT_2PI * exp(-0.5 * w * w)


cdef inline double complex _wavelet_time_conj(int wav, double s, double u0):
    if wav == WAV_MORLET:
        return exp(-0.5 * s * s) * _cis(-u0 * s)
    elif wav == WAV_MEXICAN_HAT:
        return (1.0 - s * s) * exp(-0.5 * s * s)
    else:
        if 0.0 <= s < 0.5:
            return 1.0
        elif 0.5 <= s < 1.0:
            return -1.0
        return 0.0


cdef inline double complex _haar_hat_conj(double u):
    cdef double complex acc
    cdef double q
    if fabs(u) < _HAAR_SERIES_CUT:
        acc = _HAAR_C7
        acc = acc * u + _HAAR_C6
        acc = acc * u + _HAAR_C5
        acc = acc * u + _HAAR_C4
        acc = acc * u + _HAAR_C3
        acc = acc * u + _HAAR_C2
        acc = acc * u + _HAAR_C1
        acc = acc * u + _HAAR_C0
        return acc
    q = sin(0.25 * u)
    return -4j * _cis(0.5 * u) * q * q / u


cdef inline double complex _wavelet_fourier_conj(int wav, double u, double u0):
    cdef double d
    if wav == WAV_MORLET:
        d = u - u0
        return _SQRT_2PI * exp(-0.5 * d * d)
    elif wav == WAV_MEXICAN_HAT:
        return _SQRT_2PI * u * u * exp(-0.5 * u * u)
    else:
        return _haar_hat_conj(u)


cdef inline double complex _cpow(double x, double zr_m1, double zi):
    # x**(zr_m1 + i*zi) for x > 0
    cdef double lg
    if zr_m1 == 0.0 and zi == 0.0:
        return 1.0
    lg = log(x)
    return exp(zr_m1 * lg) * _cis(zi * lg)


cdef double complex _eval_one(int fam, int i0, int i1, int i2,
                              double f0, double f1, double f2, double f3,
                              double x):
    cdef double w
    if fam == FAM_CWT_TIME:
        # i0=sig, i1=wav; f0=a, f1=b, f2=u0
        return _signal_time(i0, f1 + f0 * x) * _wavelet_time_conj(i1, x, f2)
    elif fam == FAM_CWT_FOURIER:
        # i0=sig, i1=wav, i2=sign; f0=a, f1=b, f2=u0
        w = i2 * x
        return _cis(f1 * w) * _signal_fourier(i0, w) * _wavelet_fourier_conj(i1, f0 * w, f2)
    elif fam == FAM_MELLIN_H:
        # i0=sig, i1=sign; f0=b, f1=zr, f2=zi, f3=eps
        return (_cpow(x, f1 - 1.0, f2) * _cis(i1 * f0 * x)
                * _signal_fourier(i0, i1 * x)
                * (exp(-f3 * x) if f3 != 0.0 else 1.0))
    else:
        # FAM_PSI_MOMENT: i0=wav, i1=sign; f0=u0, f1=zr, f2=zi
        return _cpow(x, f1 - 1.0, f2) * _wavelet_time_conj(i0, i1 * x, f0)


def eval_kernel(desc, x):
    """Evaluate the described integrand at real nodes `x` (complex output)."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xs = np.ascontiguousarray(
        np.asarray(x, dtype=np.float64).ravel()
    )
    cdef Py_ssize_t n = xs.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(n, dtype=np.complex128)
    cdef int fam = desc.family
    cdef bint square = desc.square_sub
    cdef int i0 = 0, i1 = 0, i2 = 0
    cdef double f0 = 0.0, f1 = 0.0, f2 = 0.0, f3 = 0.0
    ip = desc.iparams
    fp = desc.fparams
    if len(ip) > 0:
        i0 = ip[0]
    if len(ip) > 1:
        i1 = ip[1]
    if len(ip) > 2:
        i2 = ip[2]
    if len(fp) > 0:
        f0 = fp[0]
    if len(fp) > 1:
        f1 = fp[1]
    if len(fp) > 2:
        f2 = fp[2]
    if len(fp) > 3:
        f3 = fp[3]
    cdef Py_ssize_t k
    cdef double xv
    if square:
        for k in range(n):
            xv = xs[k]
            out[k] = 2.0 * xv * _eval_one(fam, i0, i1, i2, f0, f1, f2, f3, xv * xv)
    else:
        for k in range(n):
            out[k] = _eval_one(fam, i0, i1, i2, f0, f1, f2, f3, xs[k])
    return out.reshape(np.asarray(x).shape)
