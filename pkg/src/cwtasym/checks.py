"""Validation checks covering the package's numerical claims end to end.

Each check is registered with a stable name and can be run individually
(``cwtasym validate --only NAME``) or as a batch.  The same registry backs
the acceptance test suite, so the command-line gate and the pytest gate
cannot drift apart.
"""

from __future__ import annotations

import cmath
import math
import os
import tempfile
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .expansion import convergence_order, expand_frequency, expand_morlet_time
from .mellin import MellinMethod, mellin_transform
from .oracle import cwt_fourier, cwt_time
from .quadrature import QuadratureConfig, integrate, power_gauss_cut
from .signals import SignalKind, make_h, make_signal
from .specfun import gamma_complex, parabolic_cylinder_D
from .wavelets import (
    WaveletKind,
    make_wavelet,
    small_u_coefficients,
    small_u_coefficients_numeric,
)

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


_REGISTRY: "list[tuple[str, str, Callable[[], tuple[bool, str]]]]" = []


def _register(name: str, description: str):
    def wrap(func):
        _REGISTRY.append((name, description, func))
        return func

    return wrap


def available_checks() -> list:
    """(name, description) pairs in registration order."""
    return [(name, desc) for name, desc, _ in _REGISTRY]


def run_check(name: str) -> CheckResult:
    for cname, _, func in _REGISTRY:
        if cname == name:
            passed, detail = func()
            return CheckResult(name=name, passed=passed, detail=detail)
    known = ", ".join(n for n, _, _ in _REGISTRY)
    raise KeyError(f"unknown check {name!r} (known: {known})")


def run_all(names: Optional[list] = None) -> list:
    if names is None:
        names = [n for n, _, _ in _REGISTRY]
    return [run_check(n) for n in names]


def _rel(x: complex, y: complex) -> float:
    scale = max(abs(x), abs(y))
    return abs(x - y) / scale if scale > 0.0 else 0.0


@_register(
    "coefficient_tables",
    "closed-form small-argument wavelet coefficients vs contour-moment oracle",
)
def _check_coefficient_tables():
    wavelets = [
        ("morlet u0=2", make_wavelet(WaveletKind.Morlet, u0=2.0)),
        ("morlet u0=5", make_wavelet(WaveletKind.Morlet, u0=5.0)),
        ("mexhat", make_wavelet(WaveletKind.MexicanHat)),
        ("haar", make_wavelet(WaveletKind.Haar)),
    ]
    worst = 0.0
    worst_at = ""
    for label, spec in wavelets:
        closed = small_u_coefficients(spec, 11).coefficients
        numeric = small_u_coefficients_numeric(spec, 11).coefficients
        diffs = np.abs(closed - numeric)
        k = int(np.argmax(diffs))
        if diffs[k] > worst:
            worst, worst_at = float(diffs[k]), f"{label} s={k}"
        if spec.kind == WaveletKind.Haar and closed[0] != 0.0:
            return False, f"haar c_0 = {closed[0]} is not an exact zero"
        if spec.kind == WaveletKind.MexicanHat:
            bad = [s for s in range(11) if (s % 2 or s == 0) and closed[s] != 0.0]
            if bad:
                return False, f"mexhat structural zeros violated at s={bad}"
    ok = worst <= 1e-10
    return ok, f"max |closed - numeric| = {worst:.3e} ({worst_at}); tol 1e-10"


@_register(
    "oracle_consistency",
    "time-domain vs frequency-domain transform oracle on a parameter grid",
)
def _check_oracle_consistency():
    cfg = QuadratureConfig()
    signals = [
        make_signal(SignalKind.Lorentzian),
        make_signal(SignalKind.TwoSidedExp),
        make_signal(SignalKind.Gaussian),
    ]
    wavelets = [
        make_wavelet(WaveletKind.Morlet, u0=5.0),
        make_wavelet(WaveletKind.MexicanHat),
        make_wavelet(WaveletKind.Haar),
    ]
    worst = 0.0
    worst_at = ""
    for sig in signals:
        for wav in wavelets:
            for a in (0.05, 0.2, 1.0):
                for b in (0.0, 1.0):
                    wt = cwt_time(sig, wav, a, b, cfg)
                    wf = cwt_fourier(sig, wav, a, b, cfg)
                    r = _rel(wt.value, wf.value)
                    if r > worst:
                        worst = r
                        worst_at = (
                            f"{sig.kind.value} x {wav.kind.value} a={a} b={b}"
                        )
    ok = worst <= 1e-6
    return ok, f"max relative disagreement = {worst:.3e} ({worst_at}); tol 1e-6"


@_register(
    "mellin_reference_values",
    "regularized Mellin moments of the rational-decay signal vs gamma closed forms",
)
def _check_mellin_reference_values():
    cfg = QuadratureConfig()
    sig = make_signal(SignalKind.Lorentzian)
    worst0 = 0.0
    for z in (1.0, 1.5, 2.0, 3.5):
        got = mellin_transform(make_h(sig, 0.0), z, "auto", cfg).value
        ref = math.pi * math.gamma(z)
        worst0 = max(worst0, _rel(got, ref))
    worst1 = 0.0
    for z in (1.0, 1.5, 2.0, 3.5):
        got = mellin_transform(make_h(sig, 1.0), z, "auto", cfg).value
        ref = math.pi * math.gamma(z) * (1.0 - 1.0j) ** (-z)
        worst1 = max(worst1, _rel(got, ref))
    ok = worst0 <= 1e-8 and worst1 <= 1e-7
    return ok, (
        f"b=0: max rel = {worst0:.3e} (tol 1e-8); "
        f"b=1: max rel = {worst1:.3e} (tol 1e-7)"
    )


@_register(
    "mellin_method_agreement",
    "analytic-tail splitting vs damping extrapolation on a conditionally convergent case",
)
def _check_mellin_method_agreement():
    cfg = QuadratureConfig()
    sig = make_signal(SignalKind.TwoSidedExp)
    h = make_h(sig, 2.0)
    worst = 0.0
    for z in (1.5, 2.5):
        v1 = mellin_transform(h, z, MellinMethod.SplitTailAnalytic, cfg).value
        v2 = mellin_transform(h, z, MellinMethod.EpsExtrapolation, cfg).value
        worst = max(worst, _rel(v1, v2))
    ok = worst <= 1e-6
    return ok, f"max relative disagreement = {worst:.3e}; tol 1e-6"


@_register(
    "cylinder_function_identity",
    "oscillatory Gaussian moment quadrature vs the parabolic cylinder function",
)
def _check_cylinder_function_identity():
    cfg = QuadratureConfig()
    worst_ratio = 0.0
    worst_at = ""
    for nu in (1.0, 2.0, 3.5):
        gam = gamma_complex(nu).value
        for w0 in (1.0, 5.0):

            def integrand(t, _nu=nu, _w0=w0):
                t = np.asarray(t, dtype=float)
                return t ** (_nu - 1.0) * np.exp(1j * _w0 * t - 0.5 * t * t)

            cut, bound = power_gauss_cut(1.0, nu - 1.0, 0.5, 1e-16)
            quad = integrate(
                integrand,
                (0.0, cut),
                cfg,
                period_hint=_TWO_PI / w0,
                tail_bound=bound,
            )
            closed = (
                gam
                * cmath.exp(-w0 * w0 / 4.0)
                * parabolic_cylinder_D(-nu, -1j * w0).value
            )
            ratio = abs(quad.value - closed) / abs(gam)
            if ratio > worst_ratio:
                worst_ratio, worst_at = ratio, f"nu={nu} w0={w0}"
    ok = worst_ratio <= 1e-7
    return ok, (
        f"max |quadrature - closed| / Gamma(nu) = {worst_ratio:.3e} "
        f"({worst_at}); tol 1e-7"
    )


@_register(
    "remainder_identity",
    "truncated expansion plus computed remainder reproduces the transform exactly",
)
def _check_remainder_identity():
    cfg = QuadratureConfig()
    sig = make_signal(SignalKind.Lorentzian)
    wav = make_wavelet(WaveletKind.Morlet, u0=5.0)
    lines = []
    ok = True
    for a in (0.5, 0.1):
        res = expand_frequency(sig, wav, a, 0.0, 3, remainder="integral_m0", config=cfg)
        oracle = cwt_fourier(sig, wav, a, 0.0, cfg)
        diff = abs(oracle.value - res.prediction)
        budget = (
            res.abs_error_estimate
            + res.remainder_scale * res.remainder_error_estimate
            + oracle.abs_error_estimate
        )
        ok = ok and diff <= budget
        lines.append(f"a={a}: |oracle - reconstruction| = {diff:.3e} <= {budget:.3e}")
    return ok, "; ".join(lines)


@_register(
    "convergence_orders",
    "fitted log-log error orders of the truncated expansion in the small-dilation limit",
)
def _check_convergence_orders():
    cfg = QuadratureConfig(rel_tol=1e-12, abs_tol=1e-16)
    sig = make_signal(SignalKind.Lorentzian)
    # Expected order = (first omitted term with a nonzero coefficient-moment
    # product) + 1/2.  For the modulated Gaussian at b=1, n=3 the s=3 product
    # vanishes identically (the two mirror moments at exponent 4 are equal and
    # real, since (1 +- i)^4 = -4), so the leading omitted term is s=4.
    cases = [
        (make_wavelet(WaveletKind.Morlet, u0=5.0), 1.0, 1, 1.5, 0.15),
        (make_wavelet(WaveletKind.Morlet, u0=5.0), 1.0, 3, 4.5, 0.15),
        (make_wavelet(WaveletKind.MexicanHat), 0.0, 3, 4.5, 0.15),
        (make_wavelet(WaveletKind.Haar), 0.0, 2, 2.5, 0.20),
    ]
    a_values = 10.0 ** np.array([-1.0, -1.5, -2.0, -2.5])
    lines = []
    ok = True
    for wav, b, n, expected, tol_frac in cases:
        errors = []
        for a in a_values:
            res = expand_frequency(sig, wav, float(a), b, n, config=cfg)
            oracle = cwt_fourier(sig, wav, float(a), b, cfg)
            errors.append(abs(oracle.value - res.partial_sum))
        order = convergence_order(a_values, errors)
        good = abs(order - expected) <= tol_frac * expected
        ok = ok and good
        lines.append(
            f"{wav.kind.value} b={b} n={n}: fitted {order:.3f}, "
            f"expected {expected} +-{int(tol_frac * 100)}%"
        )
    return ok, "; ".join(lines)


@_register(
    "route_agreement",
    "frequency-domain and time-domain expansions agree and track the oracle",
)
def _check_route_agreement():
    cfg = QuadratureConfig()
    sig = make_signal(SignalKind.Lorentzian)
    wav = make_wavelet(WaveletKind.Morlet, u0=2.0)
    a, b, n = 0.05, 0.0, 4
    ef = expand_frequency(sig, wav, a, b, n, remainder="integral_m0", config=cfg)
    et = expand_morlet_time(sig, wav, a, b, n, remainder="integral_m0", config=cfg)
    mutual = abs(ef.partial_sum - et.partial_sum)
    budget = max(
        abs(ef.remainder_scale * ef.remainder_estimate), abs(et.remainder_estimate)
    ) + (
        ef.abs_error_estimate
        + et.abs_error_estimate
        + ef.remainder_scale * ef.remainder_error_estimate
        + et.remainder_error_estimate
    )
    oracle = cwt_fourier(sig, wav, a, b, cfg)
    rel_f = abs(ef.partial_sum - oracle.value) / abs(oracle.value)
    rel_t = abs(et.partial_sum - oracle.value) / abs(oracle.value)
    ok = mutual <= budget and rel_f <= 0.05 and rel_t <= 0.05
    return ok, (
        f"|partial_f - partial_t| = {mutual:.3e} <= {budget:.3e}; "
        f"vs oracle: {rel_f:.3%} (frequency), {rel_t:.3%} (time); tol 5%"
    )


@_register(
    "leading_order_limit",
    "small-dilation limit reproduces the closed-form leading coefficient",
)
def _check_leading_order_limit():
    cfg = QuadratureConfig()
    sig = make_signal(SignalKind.Lorentzian)
    a = 1e-3
    u0_list = [2.0]
    if os.environ.get("CWTASYM_EXTENDED"):
        u0_list.append(5.0)
    lines = []
    ok = True
    for u0 in u0_list:
        wav = make_wavelet(WaveletKind.Morlet, u0=u0)
        oracle = cwt_fourier(sig, wav, a, 0.0, cfg)
        lead = math.sqrt(_TWO_PI) * math.exp(-0.5 * u0 * u0) * math.sqrt(a)
        ratio = oracle.value / lead
        good = abs(ratio - 1.0) <= 0.02
        ok = ok and good
        lines.append(f"u0={u0}: ratio = {ratio.real:.6f}{ratio.imag:+.2e}j")
    return ok, "; ".join(lines) + "; tol |ratio - 1| <= 2%"


@_register(
    "sweep_determinism",
    "sweep output is byte-identical across repeats and worker counts",
)
def _check_sweep_determinism():
    from .cli import main as cli_main

    argv_base = [
        "sweep",
        "--signal",
        "lorentzian",
        "--wavelet",
        "morlet",
        "--u0",
        "5",
        "--b",
        "0",
        "--a-min",
        "0.01",
        "--a-max",
        "0.1",
        "--a-count",
        "4",
        "--log",
        "--n",
        "2",
        "--tol",
        "1e-8",
    ]
    outputs = []
    with tempfile.TemporaryDirectory() as tmp:
        for i, jobs in enumerate(("1", "1", "8")):
            path = os.path.join(tmp, f"sweep_{i}.csv")
            code = cli_main(argv_base + ["--jobs", jobs, "--out", path])
            if code != 0:
                return False, f"sweep run {i} exited with code {code}"
            with open(path, "rb") as fh:
                outputs.append(fh.read())
    same_repeat = outputs[0] == outputs[1]
    same_jobs = outputs[0] == outputs[2]
    ok = same_repeat and same_jobs
    return ok, (
        f"repeat runs identical: {same_repeat}; "
        f"jobs 1 vs 8 identical: {same_jobs} ({len(outputs[0])} bytes)"
    )
