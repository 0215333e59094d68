"""Kernel backends: recipe correctness, numpy/compiled parity, selection."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from cwtasym.backends import (
    SIG_GAUSSIAN,
    SIG_LORENTZIAN,
    SIG_TWO_SIDED_EXP,
    WAV_HAAR,
    WAV_MEXICAN_HAT,
    WAV_MORLET,
    available_backends,
    backend_name,
    cwt_fourier_descriptor,
    cwt_time_descriptor,
    eval_kernel,
    mellin_h_descriptor,
    numpy_backend,
    psi_moment_descriptor,
    set_backend,
)

_SQRT_2PI = np.sqrt(2.0 * np.pi)  # shared constant of every smooth transform

# strictly positive nodes (power-law families take logs), including a pair
# bracketing the small-argument series cutover of the discontinuous wavelet
_POS = np.concatenate([np.geomspace(1e-4, 30.0, 37), [3.3e-3, 0.5, 1.0]])
_SIGNED = np.concatenate([-_POS[::-1], [0.0], _POS])

_SIGNALS = (SIG_LORENTZIAN, SIG_TWO_SIDED_EXP, SIG_GAUSSIAN)
_WAVELETS = (WAV_MORLET, WAV_MEXICAN_HAT, WAV_HAAR)


def _parity_cases():
    cases = []
    for sig in _SIGNALS:
        for wav in _WAVELETS:
            cases.append(cwt_time_descriptor(sig, wav, 0.3, 0.7, 5.0))
            for sign in (1, -1):
                cases.append(cwt_fourier_descriptor(sig, wav, sign, 0.3, -1.2, 5.0))
    for sig in _SIGNALS:
        for sign in (1, -1):
            for eps in (0.0, 0.05):
                cases.append(mellin_h_descriptor(sig, sign, 1.5, 1.5 + 0.3j, eps))
    for wav in _WAVELETS:
        for sign in (1, -1):
            cases.append(psi_moment_descriptor(wav, sign, 2.0, 2.5 + 0.0j))
            cases.append(psi_moment_descriptor(wav, sign, 2.0, 1.25 - 0.4j))
    # substituted variants exercise the x -> x^2 path in both backends
    cases.extend(c.squared() for c in cases[:6])
    return cases


def _nodes_for(desc):
    if desc.family in (2, 3) and not desc.square_sub:
        return _POS
    return _SIGNED


def test_time_family_matches_formula():
    desc = cwt_time_descriptor(SIG_LORENTZIAN, WAV_MORLET, 0.25, 0.8, 5.0)
    x = _SIGNED
    got = numpy_backend.eval_kernel(desc, x)
    want = (1.0 / (1.0 + (0.8 + 0.25 * x) ** 2)) * np.exp(-5j * x - 0.5 * x * x)
    assert_allclose(got, want, rtol=1e-14)


def test_fourier_family_mirror_sign():
    # sign=-1 evaluates the integrand on the negative frequency axis
    a, b, u0 = 0.3, -1.2, 5.0
    desc = cwt_fourier_descriptor(SIG_TWO_SIDED_EXP, WAV_MEXICAN_HAT, -1, a, b, u0)
    x = _POS
    w = -x
    want = (
        np.exp(1j * b * w)
        * (2.0 / (1.0 + w * w))
        * (_SQRT_2PI * (a * w) ** 2 * np.exp(-0.5 * (a * w) ** 2))
    )
    assert_allclose(numpy_backend.eval_kernel(desc, x), want, rtol=1e-14)


def test_mellin_family_damping_and_phase():
    z = 1.5 + 0.2j
    desc = mellin_h_descriptor(SIG_GAUSSIAN, -1, 0.4, z, eps=0.02)
    x = _POS
    want = (
        np.exp((z - 1.0) * np.log(x))
        * np.exp(-1j * 0.4 * x)
        * (_SQRT_2PI * np.exp(-0.5 * x * x))
        * np.exp(-0.02 * x)
    )
    assert_allclose(numpy_backend.eval_kernel(desc, x), want, rtol=1e-14)


def test_moment_family_piecewise_values():
    # the two-step wavelet is +1 on [0, 1/2), -1 on [1/2, 1), 0 outside
    z = 1.5
    desc = psi_moment_descriptor(WAV_HAAR, 1, 0.0, z)
    x = np.array([0.25, 0.5, 0.75, 1.0, 1.5])
    got = numpy_backend.eval_kernel(desc, x)
    want = np.array([0.25 ** 0.5, -(0.5 ** 0.5), -(0.75 ** 0.5), 0.0, 0.0],
                    dtype=complex)
    assert_allclose(got, want, rtol=1e-15)


def test_squared_substitution():
    base = mellin_h_descriptor(SIG_LORENTZIAN, 1, 1.0, 2.0 + 0.0j)
    sub = base.squared()
    assert sub.square_sub and not base.square_sub
    x = _POS
    got = numpy_backend.eval_kernel(sub, x)
    want = 2.0 * x * numpy_backend.eval_kernel(base, x * x)
    assert_allclose(got, want, rtol=1e-14)


@pytest.mark.skipif("cython" not in available_backends(),
                    reason="compiled backend not built")
def test_backend_parity():
    from cwtasym.backends import _kernels

    worst = 0.0
    for desc in _parity_cases():
        x = _nodes_for(desc)
        va = numpy_backend.eval_kernel(desc, x)
        vb = _kernels.eval_kernel(desc, x)
        scale = np.max(np.abs(va)) or 1.0
        err = np.max(np.abs(va - vb)) / scale
        worst = max(worst, err)
        assert err < 2e-13, f"backend mismatch {err:.3e} for {desc}"
    assert worst < 2e-13


def test_available_backends_contains_numpy():
    names = available_backends()
    assert "numpy" in names
    assert names == tuple(sorted(names))


def test_set_backend_roundtrip():
    start = backend_name()
    try:
        prev = set_backend("numpy")
        assert prev == start
        assert backend_name() == "numpy"
        desc = cwt_time_descriptor(SIG_GAUSSIAN, WAV_MORLET, 0.5, 0.0, 5.0)
        assert_allclose(
            eval_kernel(desc, _SIGNED),
            numpy_backend.eval_kernel(desc, _SIGNED),
            rtol=0, atol=0,
        )
    finally:
        set_backend(start)
    assert backend_name() == start


def test_set_backend_unknown_name():
    with pytest.raises(ValueError, match="choices"):
        set_backend("fortran")
