import cmath
import math

import mpmath as mp
import numpy as np
import pytest
from numpy.testing import assert_allclose

from cwtasym.specfun import (
    SpecFunError,
    SpecFunMethod,
    gamma_complex,
    oscillatory_power_tail,
    parabolic_cylinder_D,
    upper_incomplete_gamma,
)

mp.mp.dps = 35


@pytest.mark.parametrize(
    "z",
    [
        1.0,
        2.0,
        10.0,
        0.5,
        4.2 - 2.0j,
        0.5 + 3.0j,
        -0.5,
        -1.5 + 0.5j,
        -4.3 - 1.2j,
        1e-3 + 1e-3j,
        12.0 + 9.0j,
    ],
)
def test_gamma_against_reference(z):
    got = gamma_complex(z)
    ref = complex(mp.gamma(z))
    assert_allclose(got.value, ref, rtol=5e-13, atol=0.0)
    assert got.abs_error_estimate >= 0.0


def test_gamma_integers_exact():
    for k, fact in [(1, 1.0), (2, 1.0), (3, 2.0), (4, 6.0), (5, 24.0)]:
        assert_allclose(gamma_complex(k).value, fact, rtol=1e-14)


def test_gamma_reflection_method_reported():
    assert gamma_complex(-1.5).method == SpecFunMethod.Reflection
    assert gamma_complex(3.5).method != SpecFunMethod.Reflection


@pytest.mark.parametrize("z", [0.0, -1.0, -2.0, -7.0])
def test_gamma_poles_raise(z):
    with pytest.raises(SpecFunError):
        gamma_complex(z)


@pytest.mark.parametrize(
    "s,x",
    [
        (0.5, 2.0),
        (2.0, 5.0),
        (3.0, 0.5),
        (1.0, 1.0),
        (-1.5, 1.0 + 2.0j),
        (-3.5, 8.0j),
        (2.5, -4.0 + 9.0j),
        (0.0, 2.0),
        (-2.0, 0.7),
        (1.5 + 1.0j, 3.0 - 1.0j),
        (4.0, 30.0),
        (-0.5, 0.05),
    ],
)
def test_upper_incomplete_gamma_against_reference(s, x):
    got = upper_incomplete_gamma(s, x).value
    ref = complex(mp.gammainc(s, x))
    assert_allclose(got, ref, rtol=2e-12, atol=1e-300)


def test_upper_incomplete_gamma_recurrence_consistency():
    # Gamma(s+1, x) = s*Gamma(s, x) + x^s e^{-x}
    s, x = 1.25, 2.0 + 1.0j
    lhs = upper_incomplete_gamma(s + 1.0, x).value
    rhs = s * upper_incomplete_gamma(s, x).value + x ** s * cmath.exp(-x)
    assert_allclose(lhs, rhs, rtol=1e-12)


@pytest.mark.parametrize(
    "nu,z",
    [
        (-1.0, 2.0),
        (-2.5, -1.0j),
        (-1.5, -5.0j),
        (-3.5, 2.0j),
        (0.5, 1.0 + 1.0j),
        (-1.0, -2.0j),
        (-6.5, 0.3),
        (-2.0, 10.0j),
    ],
)
def test_parabolic_cylinder_against_reference(nu, z):
    got = parabolic_cylinder_D(nu, z).value
    ref = complex(mp.pcfd(nu, z))
    assert_allclose(got, ref, rtol=1e-10, atol=1e-300)


def test_parabolic_cylinder_special_values():
    # D_0(z) = exp(-z^2/4)
    for z in (0.5, 2.0j, 1.0 - 1.0j):
        assert_allclose(
            parabolic_cylinder_D(0.0, z).value, cmath.exp(-z * z / 4.0), rtol=1e-12
        )
    # D_nu(0) = 2^{nu/2} sqrt(pi) / Gamma((1-nu)/2)
    nu = -1.3
    ref = 2.0 ** (nu / 2.0) * math.sqrt(math.pi) / complex(mp.gamma((1 - nu) / 2))
    assert_allclose(parabolic_cylinder_D(nu, 0.0).value, ref, rtol=1e-12)


def test_parabolic_cylinder_domain_guards():
    with pytest.raises(SpecFunError):
        parabolic_cylinder_D(-1.0, 40.0)
    with pytest.raises(SpecFunError):
        parabolic_cylinder_D(-25.0, 1.0)


@pytest.mark.parametrize(
    "sigma,c,radius",
    [
        (-1.5, 1.0, 10.0),
        (-0.5, -2.0, 25.0),
        (-3.0, 0.5, 8.0),
        (1.5, 1.0, 12.0),
        (0.0, -1.0, 30.0),
    ],
)
def test_oscillatory_power_tail_against_reference(sigma, c, radius):
    """int_U^inf t^(sigma-1) e^(ict) dt via the incomplete gamma route."""
    val, err = oscillatory_power_tail(sigma, c, radius)
    f = lambda t: t ** (sigma - 1) * mp.e ** (1j * c * t)
    ref = complex(mp.quadosc(f, [radius, mp.inf], omega=abs(c)))
    assert abs(val - ref) <= max(5e-13 * abs(ref), 1e-15)
    assert err >= 0.0


def test_oscillatory_power_tail_zero_rate():
    val, _ = oscillatory_power_tail(-2.0, 0.0, 5.0)
    assert_allclose(val, 5.0 ** (-2.0) / 2.0, rtol=1e-13)
    with pytest.raises(SpecFunError):
        oscillatory_power_tail(0.5, 0.0, 5.0)
