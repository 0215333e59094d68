"""Test signals: transform pairs, local expansions, scaled variants."""

import math

import mpmath as mp
import numpy as np
import pytest
from numpy.testing import assert_allclose

from cwtasym.signals import (
    SignalKind,
    custom_signal,
    f_hat,
    h_eval,
    make_h,
    make_signal,
    time_coefficients,
)

_SQRT_2PI = math.sqrt(2.0 * math.pi)


@pytest.mark.parametrize("kind", [SignalKind.Lorentzian, SignalKind.TwoSidedExp,
                                  SignalKind.Gaussian])
@pytest.mark.parametrize("w", [0.0, 0.5, 2.0])
def test_fourier_pair_numeric(kind, w):
    """f_freq really is the Fourier integral of f_time."""
    sig = make_signal(kind)
    with mp.workdps(30):
        f = {
            SignalKind.Lorentzian: lambda t: 1 / (1 + t * t),
            SignalKind.TwoSidedExp: lambda t: mp.exp(-abs(t)),
            SignalKind.Gaussian: lambda t: mp.exp(-t * t / 2),
        }[kind]
        # even signals: the transform reduces to a cosine integral; the
        # slowly decaying one needs the oscillation-aware integrator
        if kind == SignalKind.Lorentzian and w > 0.0:
            ref = 2 * mp.quadosc(lambda t: f(t) * mp.cos(w * t), [0, mp.inf],
                                 period=2 * mp.pi / w)
        else:
            ref = 2 * mp.quad(lambda t: f(t) * mp.cos(w * t), [0, 1, 10, mp.inf])
    got = f_hat(sig, np.array([w]))[0]
    assert abs(got - complex(ref)) < 1e-12 * abs(complex(ref))


def test_fourier_pair_spot_values():
    lor = make_signal(SignalKind.Lorentzian)
    assert_allclose(f_hat(lor, np.array([1.0]))[0], math.pi / math.e, rtol=1e-15)
    tse = make_signal(SignalKind.TwoSidedExp)
    assert_allclose(f_hat(tse, np.array([3.0]))[0], 0.2, rtol=1e-15)
    gau = make_signal(SignalKind.Gaussian)
    assert_allclose(
        f_hat(gau, np.array([2.0]))[0], _SQRT_2PI * math.exp(-2.0), rtol=1e-15
    )


@pytest.mark.parametrize(
    "kind,b",
    [
        (SignalKind.Lorentzian, 1.0),
        (SignalKind.Lorentzian, -0.3),
        (SignalKind.Gaussian, 0.7),
        (SignalKind.Gaussian, 0.0),
    ],
)
def test_time_coefficients_vs_highprec(kind, b):
    sig = make_signal(kind)
    n = 6
    got = time_coefficients(sig, b, n)
    with mp.workdps(40):
        f = (lambda t: 1 / (1 + t * t)) if kind == SignalKind.Lorentzian \
            else (lambda t: mp.exp(-t * t / 2))
        ref = mp.taylor(f, mp.mpf(b), n - 1)
    for s in range(n):
        assert abs(got[s] - complex(ref[s])) < 1e-13 * max(1.0, abs(complex(ref[s])))


def test_time_coefficients_two_sided_exp():
    sig = make_signal(SignalKind.TwoSidedExp)
    for b, sgn in ((2.0, -1.0), (-2.0, 1.0)):
        got = time_coefficients(sig, b, 5)
        want = [math.exp(-2.0) * sgn ** s / math.factorial(s) for s in range(5)]
        assert_allclose(got, np.asarray(want, dtype=complex), rtol=1e-14)
    # at the kink only the value itself exists
    assert_allclose(time_coefficients(sig, 0.0, 1), [1.0])
    with pytest.raises(ValueError, match="not differentiable"):
        time_coefficients(sig, 0.0, 2)


def test_time_coefficients_custom_route():
    """The fit-based route agrees with the rescaled analytic coefficients."""
    A, s = 2.0, 0.5
    base = make_signal(SignalKind.Lorentzian)
    cus = custom_signal(SignalKind.Lorentzian, amplitude=A, time_scale=s)
    b = 0.8
    got = time_coefficients(cus, b, 4)
    ref = time_coefficients(base, b / s, 4)
    want = np.array([A * ref[k] / s ** k for k in range(4)])
    assert_allclose(got, want, rtol=1e-7)


def test_custom_route_rejects_kink():
    cus = custom_signal(SignalKind.TwoSidedExp, time_scale=2.0)
    with pytest.raises(ValueError, match="not smooth"):
        time_coefficients(cus, 0.0, 3)


def test_custom_scaling_rules():
    A, s = 3.0, 2.0
    base = make_signal(SignalKind.TwoSidedExp)
    cus = custom_signal(SignalKind.TwoSidedExp, amplitude=A, time_scale=s)
    t = np.array([0.3, 1.7, -4.0])
    assert_allclose(cus.f_time(t), A * base.f_time(t / s), rtol=1e-15)
    w = np.array([0.25, 1.0, 3.0])
    assert_allclose(cus.f_freq(w), A * s * base.f_freq(s * w), rtol=1e-15)
    assert cus.kind == SignalKind.Custom
    assert cus.tail_beta == base.tail_beta
    assert cus.sup_time == A * base.sup_time
    assert cus.sup_freq == A * s * base.sup_freq
    assert cus.kinks == (0.0,)
    # leading algebraic tail: A*s*f_hat(s*w) ~ (A*s)*2*(s*w)^-2
    assert_allclose(cus.tail_coeffs[0], A * s * 2.0 / s ** 2, rtol=1e-15)


def test_custom_signal_validation():
    with pytest.raises(ValueError):
        custom_signal(SignalKind.Custom)
    with pytest.raises(ValueError):
        custom_signal(SignalKind.Gaussian, time_scale=0.0)
    with pytest.raises(ValueError):
        make_signal(SignalKind.Custom)


@pytest.mark.parametrize("b", [0.0, 1.3])
def test_h_eval_matches_definition(b):
    sig = make_signal(SignalKind.Lorentzian)
    h = make_h(sig, b)
    u = np.geomspace(0.1, 8.0, 9)
    assert_allclose(h_eval(h, u), np.exp(1j * b * u) * np.pi * np.exp(-u),
                    rtol=1e-14)
    # reflected argument flips both the phase and the transform argument
    assert_allclose(h_eval(h, u, mirror=True),
                    np.exp(-1j * b * u) * np.pi * np.exp(-u), rtol=1e-14)
    # the damping factor is plain exponential in u
    assert_allclose(h_eval(h, u, eps=0.3),
                    h_eval(h, u) * np.exp(-0.3 * u), rtol=1e-14)


def test_envelopes_bound_the_functions():
    for kind in (SignalKind.Lorentzian, SignalKind.TwoSidedExp, SignalKind.Gaussian):
        sig = make_signal(kind)
        for t in (1.5, 4.0, 9.0):
            ek, ec, ep = sig.time_envelope
            env = {"alg": ec * t ** -ep, "exp": ec * math.exp(-ep * t),
                   "gauss": ec * math.exp(-ep * t * t)}[ek]
            assert abs(sig.f_time(np.array([t]))[0]) <= env * (1.0 + 1e-12)
            fk, fc, fp = sig.freq_envelope
            fenv = {"alg": fc * t ** -fp, "exp": fc * math.exp(-fp * t),
                    "gauss": fc * math.exp(-fp * t * t)}[fk]
            assert abs(f_hat(sig, np.array([t]))[0]) <= fenv * (1.0 + 1e-12)
