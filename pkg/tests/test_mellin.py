"""Regularized power moments of the boundary function, all four strategies."""

import cmath
import math

import mpmath as mp
import pytest
from numpy.testing import assert_allclose

from cwtasym.mellin import (
    MellinError,
    MellinMethod,
    MellinValue,
    mellin_morlet_time,
    mellin_transform,
)
from cwtasym.signals import SignalKind, make_h, make_signal


def _h(kind, b):
    return make_h(make_signal(kind), b)


@pytest.mark.parametrize("z", [1.0, 1.5, 2.0, 3.5])
def test_lorentzian_zero_offset(z):
    """M at b = 0 reduces to pi * Gamma(z) for the slowly-decaying signal."""
    got = mellin_transform(_h(SignalKind.Lorentzian, 0.0), z).value
    want = math.pi * float(mp.gamma(z))
    assert abs(got - want) < 1e-10 * abs(want)


@pytest.mark.parametrize("z", [1.0, 2.0, 3.5, 1.5 + 0.5j])
def test_lorentzian_offset_one(z):
    got = mellin_transform(_h(SignalKind.Lorentzian, 1.0), z).value
    with mp.workdps(30):
        want = mp.pi * mp.gamma(z) * (1 - 1j) ** (-mp.mpc(z))
    assert abs(got - complex(want)) < 1e-9 * abs(complex(want))


def test_frozen_halfline_moment():
    # z = 2, b = 1: pi * Gamma(2) * (1-i)^-2 = pi * i / 2
    got = mellin_transform(_h(SignalKind.Lorentzian, 1.0), 2.0).value
    assert_allclose([got.real, got.imag], [0.0, math.pi / 2.0], atol=1e-12)


def test_mirror_flips_the_offset():
    h = _h(SignalKind.Lorentzian, 1.0)
    plain = mellin_transform(h, 2.5).value
    mirrored = mellin_transform(h, 2.5, mirror=True).value
    # h(-u) carries e^{-ibu}: same as the +b transform conjugated (real f_hat)
    assert abs(mirrored - plain.conjugate()) < 1e-10 * abs(plain)


def test_gaussian_closed_route():
    h = _h(SignalKind.Gaussian, 0.8)
    closed = mellin_transform(h, 1.75, MellinMethod.ClosedForm)
    quad = mellin_transform(h, 1.75, MellinMethod.PureQuadrature)
    assert closed.method == MellinMethod.ClosedForm
    assert abs(closed.value - quad.value) < 1e-10 * abs(closed.value)


def test_two_sided_exp_zero_offset_window():
    h = _h(SignalKind.TwoSidedExp, 0.0)
    got = mellin_transform(h, 1.5, MellinMethod.ClosedForm)
    want = math.pi / math.sin(0.75 * math.pi)
    assert_allclose(got.value, want, rtol=1e-13)
    # outside the convergence strip the undamped moment does not exist
    with pytest.raises(MellinError, match="converges"):
        mellin_transform(h, 2.5, MellinMethod.ClosedForm)


def test_auto_routing():
    fast = mellin_transform(_h(SignalKind.Gaussian, 0.0), 2.0)
    assert fast.method == MellinMethod.PureQuadrature
    slow = mellin_transform(_h(SignalKind.TwoSidedExp, 2.0), 2.0)
    assert slow.method == MellinMethod.SplitTailAnalytic


def test_strategy_preconditions():
    # direct quadrature refuses an algebraically decaying transform tail
    with pytest.raises(MellinError, match="algebraic"):
        mellin_transform(_h(SignalKind.TwoSidedExp, 2.0), 1.5,
                         MellinMethod.PureQuadrature)
    with pytest.raises(ValueError, match="Re\\(z\\) > 0"):
        mellin_transform(_h(SignalKind.Lorentzian, 0.0), -1.0)
    with pytest.raises(ValueError, match="unknown"):
        mellin_transform(_h(SignalKind.Lorentzian, 0.0), 1.5, "newton")


def test_split_and_extrapolation_agree():
    h = _h(SignalKind.TwoSidedExp, 2.0)
    for z in (1.5, 2.5):
        tail = mellin_transform(h, z, MellinMethod.SplitTailAnalytic)
        eps = mellin_transform(h, z, MellinMethod.EpsExtrapolation)
        assert abs(tail.value - eps.value) < 1e-6 * abs(tail.value)


def test_extrapolation_detects_divergence():
    """Moments past the decay rate have no undamped limit; the ladder's
    estimates run away and the strategy reports instability."""
    h = _h(SignalKind.TwoSidedExp, 0.0)
    with pytest.raises(MellinError, match="unstable"):
        mellin_transform(h, 2.5, MellinMethod.EpsExtrapolation)


def test_morlet_time_moments_vs_highprec():
    u0 = 2.0
    with mp.workdps(30):
        for nu in (1.0, 2.5, 1.5 + 0.5j):
            for sign, arg in ((1, -1j * u0), (-1, 1j * u0)):
                want = mp.gamma(nu) * mp.exp(-u0 * u0 / 4) * mp.pcfd(-mp.mpc(nu), arg)
                got = mellin_morlet_time(nu, u0, sign)
                assert got.method == MellinMethod.ClosedForm
                assert abs(got.value - complex(want)) < 1e-11 * abs(complex(want))


def test_morlet_time_moment_validation():
    with pytest.raises(ValueError, match="Re\\(nu\\) > 0"):
        mellin_morlet_time(-0.5, 2.0, 1)
    with pytest.raises(ValueError, match="sign"):
        mellin_morlet_time(1.5, 2.0, 2)


def test_value_container_fields():
    res = mellin_transform(_h(SignalKind.Lorentzian, 0.0), 1.5)
    assert isinstance(res, MellinValue)
    assert res.abs_error_estimate >= 0.0
    assert cmath.isfinite(res.value)
