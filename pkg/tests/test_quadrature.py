import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from cwtasym.quadrature import (
    QuadratureConfig,
    QuadratureError,
    integrate,
    power_exp_cut,
    power_gauss_cut,
    richardson_epsilon,
)


def test_config_validation():
    with pytest.raises(ValueError):
        QuadratureConfig(rel_tol=1e-18)
    with pytest.raises(ValueError):
        QuadratureConfig(abs_tol=-1.0)
    with pytest.raises(ValueError):
        QuadratureConfig(max_subdivisions=0)
    with pytest.raises(ValueError):
        QuadratureConfig(eps_levels=1)
    cfg = QuadratureConfig(rel_tol=1e-8)
    assert cfg.rel_tol == 1e-8


@pytest.mark.parametrize(
    "f,domain,ref",
    [
        (lambda x: x ** 3 - 2 * x + 1.0, (0.0, 2.0), 2.0),
        (lambda x: np.exp(-x), (0.0, 50.0), 1.0 - math.exp(-50.0)),
        (lambda x: np.sin(x), (0.0, math.pi), 2.0),
        (lambda x: 1.0 / (1.0 + x * x), (-40.0, 40.0), 2.0 * math.atan(40.0)),
    ],
)
def test_finite_interval_values(f, domain, ref):
    res = integrate(f, domain)
    assert_allclose(res.value, ref, rtol=1e-12, atol=1e-14)
    assert res.converged
    # bisected panels are evaluated before splitting, so the total
    # evaluation count exceeds 15 per surviving panel
    assert res.n_evaluations >= 15 * res.n_panels


def test_infinite_domain_gaussian():
    res = integrate(
        lambda x: np.exp(-x * x),
        (-np.inf, np.inf),
        envelope=("gauss", 1.0, 1.0),
    )
    assert_allclose(res.value, math.sqrt(math.pi), rtol=1e-12)


def test_semi_infinite_oscillatory_with_period_hint():
    w = 37.0
    res = integrate(
        lambda x: np.cos(w * x) * np.exp(-x),
        (0.0, np.inf),
        period_hint=2.0 * math.pi / w,
        envelope=("exp", 1.0, 1.0),
    )
    assert_allclose(res.value, 1.0 / (1.0 + w * w), rtol=1e-11, atol=1e-15)


def test_left_singularity_substitution():
    # x^(-1/2) * exp(-x) over (0, inf) = sqrt(pi)
    res = integrate(
        lambda x: np.exp(-x) / np.sqrt(x),
        (0.0, np.inf),
        left_singularity=-0.5,
        envelope=("exp", 1.0, 1.0),
    )
    assert_allclose(res.value, math.sqrt(math.pi), rtol=1e-11)


def test_breakpoints_resolve_kinks():
    ref = 2.0 - math.exp(-2.3) - math.exp(-3.7)
    res = integrate(
        lambda x: np.exp(-np.abs(x - 0.3)), (-2.0, 4.0), breakpoints=[0.3]
    )
    assert_allclose(res.value, ref, rtol=1e-12)


def test_tail_bound_enters_error_estimate():
    cfg = QuadratureConfig()
    res0 = integrate(lambda x: np.exp(-x), (0.0, 30.0), cfg)
    res1 = integrate(lambda x: np.exp(-x), (0.0, 30.0), cfg, tail_bound=1e-9)
    assert res1.abs_error_estimate >= res0.abs_error_estimate + 0.9e-9
    assert_allclose(res1.value, res0.value, rtol=1e-14)


def test_envelope_extension_reaches_mass():
    """A slowly decaying envelope must not truncate the integral early."""
    res = integrate(
        lambda x: np.exp(-0.01 * x),
        (0.0, np.inf),
        envelope=("exp", 1.0, 0.01),
    )
    assert_allclose(res.value, 100.0, rtol=1e-10)


def test_subdivision_budget_exhaustion_flags_nonconvergence():
    cfg = QuadratureConfig(max_subdivisions=4)
    res = integrate(
        lambda x: np.cos(300.0 * x) * np.cos(7.0 * x), (0.0, 20.0), cfg
    )
    assert not res.converged


def test_complex_valued_integrand():
    res = integrate(lambda x: np.exp(1j * x - x), (0.0, np.inf),
                    envelope=("exp", 1.0, 1.0))
    assert_allclose(res.value, 1.0 / (1.0 - 1j), rtol=1e-12)


@pytest.mark.parametrize("c,sigma,rate", [(1.0, 0.0, 1.0), (3.0, 2.5, 0.3),
                                          (0.5, 4.0, 2.0)])
def test_power_exp_cut_bound_is_valid(c, sigma, rate):
    delta = 1e-10
    cut, bound = power_exp_cut(c, sigma, rate, delta)
    assert bound <= delta * 1.05
    tail = integrate(
        lambda t: c * t ** sigma * np.exp(-rate * t),
        (cut, cut + 60.0 / rate),
    )
    assert abs(tail.value) <= bound * 1.01 + 1e-16


@pytest.mark.parametrize("c,sigma,rate", [(1.0, 0.0, 0.5), (2.0, 3.0, 0.25)])
def test_power_gauss_cut_bound_is_valid(c, sigma, rate):
    delta = 1e-11
    cut, bound = power_gauss_cut(c, sigma, rate, delta)
    assert bound <= delta * 1.05
    tail = integrate(
        lambda t: c * t ** sigma * np.exp(-rate * t * t),
        (cut, cut + 30.0 / math.sqrt(rate)),
    )
    assert abs(tail.value) <= bound * 1.01 + 1e-16


def test_richardson_epsilon_geometric_corrections():
    # F(eps) = L + 2*eps + 3*eps^2 sampled on a halving ladder
    L = 0.75
    eps = [0.125 / 2 ** k for k in range(5)]
    values = [L + 2 * e + 3 * e * e for e in eps]
    limit, corrections = richardson_epsilon(values)
    assert_allclose(limit, L, rtol=0, atol=1e-12)
    assert corrections[-1] < corrections[0]


def test_richardson_epsilon_instability_raises():
    values = [1.0, 1.5, 3.0, 7.0]  # accelerating ratios: limit runs away
    with pytest.raises(QuadratureError):
        richardson_epsilon(values, noise_floor=1e-12)


def test_richardson_epsilon_noise_floor_suppresses_spurious_raise():
    values = [2.0, 2.0 + 1e-15, 2.0 + 3e-15, 2.0 + 7e-15]
    limit, _ = richardson_epsilon(values, noise_floor=1e-10)
    assert_allclose(limit, 2.0, atol=1e-12)
