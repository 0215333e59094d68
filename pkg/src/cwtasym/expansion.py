"""Small-dilation asymptotic expansion of the CWT with computable remainders.

The frequency-domain route expands the conjugated wavelet transform about
zero argument and pairs each Taylor coefficient with a regularized Mellin
moment of the boundary function h(u) = e^{ibu} f_hat(u); the time-domain
route expands the signal about the translation point and pairs each
coefficient with a one-sided moment of the wavelet.  Both carry an exact
integral remainder, so the truncated sum plus remainder reproduces the
transform identically (up to quadrature error), and the remainder can also
be estimated empirically against the brute-force oracle.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

import numpy as np

from .backends import psi_moment_descriptor
from .mellin import MellinError, mellin_morlet_time, mellin_transform
from .oracle import cwt_fourier, cwt_time
from .quadrature import (
    QuadratureConfig,
    QuadratureError,
    integrate,
    power_exp_cut,
    power_gauss_cut,
    richardson_epsilon,
)
from .signals import SignalSpec, SignalKind, h_eval, make_h, time_coefficients
from .wavelets import (
    WaveletKind,
    WaveletSpec,
    psi_hat_tail,
    small_u_coefficients,
)

_TWO_PI = 2.0 * math.pi
_TAIL_CUTOVER = 0.25


class RemainderKind(Enum):
    IntegralM0 = "integral_m0"
    Empirical = "empirical"
    NONE = "none"


def _as_remainder_kind(value: Union[str, RemainderKind]) -> RemainderKind:
    if isinstance(value, RemainderKind):
        return value
    try:
        return RemainderKind(value)
    except ValueError:
        choices = ", ".join(k.value for k in RemainderKind)
        raise ValueError(
            f"unknown remainder kind {value!r} (choices: {choices})"
        ) from None


@dataclass(frozen=True)
class ExpansionResult:
    """A truncated expansion of W(b, a) with error accounting.

    ``terms[s]`` is the complete s-th term including prefactors and the
    dilation power; ``partial_sum`` is their sum.  ``remainder_estimate``
    holds the unscaled remainder integral delta_n, so the reconstruction is
    ``partial_sum + remainder_scale * remainder_estimate``
    (``remainder_scale`` is 1/(2*pi) for the frequency route, 1 for the time
    route).  ``abs_error_estimate`` bounds the numerical error of
    ``partial_sum`` alone.
    """

    domain: str
    a: float
    b: float
    n: int
    lam: int
    terms: np.ndarray
    term_error_estimates: np.ndarray
    partial_sum: complex
    abs_error_estimate: float
    remainder_kind: RemainderKind
    remainder_estimate: complex
    remainder_error_estimate: float
    remainder_scale: float

    @property
    def prediction(self) -> complex:
        """partial_sum plus the scaled remainder (when one was computed)."""
        return self.partial_sum + self.remainder_scale * self.remainder_estimate


def mirror_sign(s: int, lam: float) -> complex:
    """The reflection factor (-1)**(s + lam + 1) on the principal branch."""
    e = s + lam + 1.0
    if abs(e - round(e)) < 1e-12:
        return -1.0 + 0.0j if round(e) % 2 else 1.0 + 0.0j
    return cmath.exp(1j * math.pi * e)


def _poly_tail_cut(env: tuple, k_const: float, a: float, deg: int, delta: float):
    """Cut radius and bound for env(v) * K * (1 + (a*v)**deg) style integrands."""
    kind, c, p = env
    if kind == "exp":
        u1, b1 = power_exp_cut(c * k_const, 0.0, p, delta)
        u2, b2 = power_exp_cut(c * k_const * a ** deg, float(deg), p, delta)
        return max(u1, u2), b1 + b2
    if kind == "gauss":
        u1, b1 = power_gauss_cut(c * k_const, 0.0, p, delta)
        u2, b2 = power_gauss_cut(c * k_const * a ** deg, float(deg), p, delta)
        return max(u1, u2), b1 + b2
    raise QuadratureError(f"unsupported envelope kind {kind!r} for a direct cut")


def _freq_side_hints(wavelet: WaveletSpec, sign: int, a: float, b: float):
    breakpoints = [_TAIL_CUTOVER / a]
    if wavelet.kind == WaveletKind.Morlet and sign > 0:
        u0 = wavelet.u0
        breakpoints += [(u0 - 3.0) / a, u0 / a, (u0 + 3.0) / a]
    elif wavelet.kind == WaveletKind.MexicanHat:
        breakpoints += [math.sqrt(2.0) / a, 3.5 / a]
    elif wavelet.kind == WaveletKind.Haar:
        breakpoints += [4.66 / a]
    osc = abs(b) + (a if wavelet.kind == WaveletKind.Haar else 0.0)
    period = _TWO_PI / osc if osc > 0.0 else None
    return breakpoints, period


def remainder_frequency(
    signal: SignalSpec,
    wavelet: WaveletSpec,
    a: float,
    b: float,
    n: int,
    config: Optional[QuadratureConfig] = None,
) -> tuple[complex, float]:
    """The exact frequency-domain remainder delta_n(a) and its error estimate.

    Computed after rescaling as sqrt(a) * [int_0^inf psi_tail(a v) h(v) dv +
    int_0^inf psi_tail(-a v) h(-v) dv]; for signals whose transform decays
    only algebraically the conditionally convergent integrals are damped and
    extrapolated to the undamped limit.
    """
    if not a > 0.0:
        raise ValueError("the dilation parameter must be positive")
    cfg = config if config is not None else QuadratureConfig()
    h = make_h(signal, b)
    table = small_u_coefficients(wavelet, n)
    k_const = wavelet.hat_sup + float(np.sum(np.abs(table.coefficients)))
    delta = 0.5 * cfg.abs_tol

    total = 0.0 + 0.0j
    err = 0.0
    for sign in (1, -1):
        mirror = sign < 0

        def side_integrand(v, eps=0.0, _mirror=mirror, _sign=sign):
            v = np.asarray(v, dtype=float)
            return psi_hat_tail(wavelet, n, _sign * a * v) * h_eval(
                h, v, mirror=_mirror, eps=eps
            )

        breakpoints, period = _freq_side_hints(wavelet, sign, a, b)
        if math.isfinite(signal.tail_beta):
            values = []
            quad_err = 0.0
            c_env = signal.freq_envelope[1]
            for k in range(cfg.eps_levels):
                eps = cfg.eps0 / 2.0 ** k
                deg = max(n - 1 - signal.tail_beta, 0.0)
                u1, b1 = power_exp_cut(c_env * k_const, 0.0, eps, delta)
                u2, b2 = power_exp_cut(
                    c_env * k_const * a ** (n - 1), deg, eps, delta
                )
                cut, bound = max(u1, u2), b1 + b2
                cut = min(cut, cfg.truncation_radius)
                res = integrate(
                    lambda v, _e=eps: side_integrand(v, eps=_e),
                    (0.0, cut),
                    cfg,
                    breakpoints=breakpoints,
                    period_hint=period,
                    tail_bound=bound,
                )
                values.append(res.value)
                quad_err = max(quad_err, res.abs_error_estimate)
            try:
                limit, corrections = richardson_epsilon(
                    values, noise_floor=100.0 * quad_err
                )
            except QuadratureError as exc:
                raise MellinError(str(exc)) from None
            total += limit
            err += (corrections[-1] if corrections else 0.0) + 3.0 * quad_err
        else:
            cut, bound = _poly_tail_cut(
                signal.freq_envelope, k_const, a, n - 1, delta
            )
            cut = min(cut, cfg.truncation_radius)
            res = integrate(
                side_integrand,
                (0.0, cut),
                cfg,
                breakpoints=breakpoints,
                period_hint=period,
                tail_bound=bound,
            )
            total += res.value
            err += res.abs_error_estimate
    root_a = math.sqrt(a)
    return root_a * total, root_a * err


def expand_frequency(
    signal: SignalSpec,
    wavelet: WaveletSpec,
    a: float,
    b: float,
    n: int,
    remainder: Union[str, RemainderKind] = "none",
    config: Optional[QuadratureConfig] = None,
    mellin_method: Union[str, object] = "auto",
) -> ExpansionResult:
    """Frequency-domain expansion of W(b, a) to n terms."""
    if not a > 0.0:
        raise ValueError("the dilation parameter must be positive")
    if n < 1:
        raise ValueError("need at least one expansion term")
    cfg = config if config is not None else QuadratureConfig()
    kind = _as_remainder_kind(remainder)
    lam = wavelet.lam
    table = small_u_coefficients(wavelet, n)
    cs = table.coefficients
    h = make_h(signal, b)

    terms = np.zeros(n, dtype=complex)
    term_errs = np.zeros(n)
    for s in range(n):
        c = cs[s]
        if c == 0.0:
            continue
        z = s + lam
        m_plus = mellin_transform(h, z, mellin_method, cfg)
        m_minus = mellin_transform(h, z, mellin_method, cfg, mirror=True)
        msign = mirror_sign(s, lam)
        apow = a ** (s + lam - 0.5)
        terms[s] = c * (m_plus.value + msign * m_minus.value) * apow / _TWO_PI
        term_errs[s] = (
            abs(c)
            * (m_plus.abs_error_estimate + abs(msign) * m_minus.abs_error_estimate)
            * apow
            / _TWO_PI
        )
    partial = complex(terms.sum())
    part_err = float(term_errs.sum())

    rem_val, rem_err = 0.0 + 0.0j, 0.0
    if kind == RemainderKind.IntegralM0:
        rem_val, rem_err = remainder_frequency(signal, wavelet, a, b, n, cfg)
    elif kind == RemainderKind.Empirical:
        oracle = cwt_fourier(signal, wavelet, a, b, cfg)
        rem_val = (oracle.value - partial) * _TWO_PI
        rem_err = (oracle.abs_error_estimate + part_err) * _TWO_PI

    return ExpansionResult(
        domain="frequency",
        a=float(a),
        b=float(b),
        n=n,
        lam=lam,
        terms=terms,
        term_error_estimates=term_errs,
        partial_sum=partial,
        abs_error_estimate=part_err,
        remainder_kind=kind,
        remainder_estimate=rem_val,
        remainder_error_estimate=rem_err,
        remainder_scale=1.0 / _TWO_PI,
    )


def _time_moment_quadrature(
    wavelet: WaveletSpec, nu: float, mirror: bool, cfg: QuadratureConfig
) -> tuple[complex, float]:
    """One-sided wavelet moment int_0^inf t^(nu-1) conj(psi)(+-t) dt."""
    sign = -1 if mirror else 1
    if wavelet.time_support is not None:
        if mirror:
            return 0.0 + 0.0j, 0.0  # the support lies entirely on t >= 0
        desc = psi_moment_descriptor(wavelet.wav_id, sign, wavelet.u0, complex(nu))
        res = integrate(
            desc,
            (0.0, wavelet.time_support[1]),
            cfg,
            breakpoints=[0.5],
            left_singularity=(nu - 1.0) if nu < 1.0 else None,
        )
        return res.value, res.abs_error_estimate
    desc = psi_moment_descriptor(wavelet.wav_id, sign, wavelet.u0, complex(nu))
    _, c_w, rate = wavelet.time_envelope
    cut, bound = power_gauss_cut(c_w, nu - 1.0, rate, 0.5 * cfg.abs_tol)
    cut = min(cut, cfg.truncation_radius)
    period = _TWO_PI / wavelet.u0 if wavelet.kind == WaveletKind.Morlet else None
    res = integrate(
        desc,
        (0.0, cut),
        cfg,
        period_hint=period,
        left_singularity=(nu - 1.0) if nu < 1.0 else None,
        tail_bound=bound,
    )
    return res.value, res.abs_error_estimate


def _time_moment_closed(
    wavelet: WaveletSpec, nu: float, mirror: bool
) -> tuple[complex, float]:
    """Closed-form Morlet moment via the parabolic cylinder function."""
    m = mellin_morlet_time(nu, wavelet.u0, 1 if mirror else -1)
    return m.value, m.abs_error_estimate


def _taylor_remainder_factory(signal: SignalSpec, b: float, n: int):
    """Evaluator for f(b+x) - (first n Taylor terms), stable near x = 0."""
    cutover = _TAIL_CUTOVER
    for k in signal.kinks:
        gap = abs(b - k)
        if gap > 0.0:
            cutover = min(cutover, 0.45 * gap)
    cs = time_coefficients(signal, b, n)
    if signal.kind == SignalKind.Custom:
        # Numerically extracted coefficients beyond n are too noisy to sum;
        # fall back to direct subtraction everywhere.
        extended = None
    else:
        try:
            extended = time_coefficients(signal, b, n + 10)[n:]
        except ValueError:
            extended = None

    def evaluate(x):
        x = np.asarray(x, dtype=float)
        out = np.empty(x.shape, dtype=complex)
        small = np.abs(x) < cutover if extended is not None else np.zeros(
            x.shape, dtype=bool
        )
        if extended is not None:
            xs = x[small]
            acc = np.zeros(xs.shape, dtype=complex)
            for c in extended[::-1]:
                acc = acc * xs + c
            out[small] = acc * xs ** n
        xb = x[~small]
        poly = np.zeros(xb.shape, dtype=complex)
        for c in cs[::-1]:
            poly = poly * xb + c
        out[~small] = signal.f_time(b + xb) - poly
        return out

    return evaluate, cutover


def _remainder_time(
    signal: SignalSpec,
    wavelet: WaveletSpec,
    a: float,
    b: float,
    n: int,
    cfg: QuadratureConfig,
) -> tuple[complex, float]:
    """Exact time-domain remainder: the Taylor tail of f against the wavelet."""
    f_tail, cutover = _taylor_remainder_factory(signal, b, n)
    cs_abs = float(np.sum(np.abs(time_coefficients(signal, b, n))))
    k_const = signal.sup_time + cs_abs

    def psi_conj(s, sign):
        s = np.asarray(s, dtype=float)
        t = sign * s
        if wavelet.kind == WaveletKind.Morlet:
            return np.exp(-1j * wavelet.u0 * t - 0.5 * t * t)
        if wavelet.kind == WaveletKind.MexicanHat:
            return ((1.0 - t * t) * np.exp(-0.5 * t * t)).astype(complex)
        out = np.zeros(s.shape, dtype=complex)
        out[(t >= 0.0) & (t < 0.5)] = 1.0
        out[(t >= 0.5) & (t < 1.0)] = -1.0
        return out

    total = 0.0 + 0.0j
    err = 0.0
    for sign in (1, -1):

        def side(s, _sign=sign):
            s = np.asarray(s, dtype=float)
            return f_tail(_sign * a * s) * psi_conj(s, _sign)

        if wavelet.time_support is not None:
            if sign < 0:
                continue  # wavelet support lies on s >= 0
            breakpoints = [0.5]
            if 0.0 < cutover / a < 1.0:
                breakpoints.append(cutover / a)
            res = integrate(
                side, (0.0, wavelet.time_support[1]), cfg, breakpoints=breakpoints
            )
        else:
            _, c_w, rate = wavelet.time_envelope
            u1, b1 = power_gauss_cut(c_w * k_const, 0.0, rate, 0.5 * cfg.abs_tol)
            u2, b2 = power_gauss_cut(
                c_w * k_const * a ** (n - 1), float(n - 1), rate, 0.5 * cfg.abs_tol
            )
            cut = min(max(u1, u2), cfg.truncation_radius)
            period = (
                _TWO_PI / wavelet.u0 if wavelet.kind == WaveletKind.Morlet else None
            )
            breakpoints = [cutover / a]
            for k in signal.kinks:
                breakpoints.append(sign * (k - b) / a)
            res = integrate(
                side,
                (0.0, cut),
                cfg,
                breakpoints=breakpoints,
                period_hint=period,
                tail_bound=b1 + b2,
            )
        total += res.value
        err += res.abs_error_estimate
    root_a = math.sqrt(a)
    return root_a * total, root_a * err


def _expand_time_impl(
    signal: SignalSpec,
    wavelet: WaveletSpec,
    a: float,
    b: float,
    n: int,
    remainder: Union[str, RemainderKind],
    cfg: QuadratureConfig,
    moment_fn,
) -> ExpansionResult:
    kind = _as_remainder_kind(remainder)
    cs = time_coefficients(signal, b, n)
    terms = np.zeros(n, dtype=complex)
    term_errs = np.zeros(n)
    lam = wavelet.lam
    for s in range(n):
        c = cs[s]
        if c == 0.0:
            continue
        m_plus, e_plus = moment_fn(wavelet, float(s + 1), False, cfg)
        m_minus, e_minus = moment_fn(wavelet, float(s + 1), True, cfg)
        msign = mirror_sign(s, lam)  # equals (-1)**(s+lam-1) on the principal branch
        apow = a ** (s + 0.5)
        terms[s] = c * (m_plus + msign * m_minus) * apow
        term_errs[s] = abs(c) * (e_plus + e_minus) * apow
    partial = complex(terms.sum())
    part_err = float(term_errs.sum())

    rem_val, rem_err = 0.0 + 0.0j, 0.0
    if kind == RemainderKind.IntegralM0:
        rem_val, rem_err = _remainder_time(signal, wavelet, a, b, n, cfg)
    elif kind == RemainderKind.Empirical:
        oracle = cwt_time(signal, wavelet, a, b, cfg)
        rem_val = oracle.value - partial
        rem_err = oracle.abs_error_estimate + part_err

    return ExpansionResult(
        domain="time",
        a=float(a),
        b=float(b),
        n=n,
        lam=lam,
        terms=terms,
        term_error_estimates=term_errs,
        partial_sum=partial,
        abs_error_estimate=part_err,
        remainder_kind=kind,
        remainder_estimate=rem_val,
        remainder_error_estimate=rem_err,
        remainder_scale=1.0,
    )


def expand_time(
    signal: SignalSpec,
    wavelet: WaveletSpec,
    a: float,
    b: float,
    n: int,
    remainder: Union[str, RemainderKind] = "none",
    config: Optional[QuadratureConfig] = None,
) -> ExpansionResult:
    """Time-domain expansion with wavelet moments computed by quadrature."""
    if not a > 0.0:
        raise ValueError("the dilation parameter must be positive")
    if n < 1:
        raise ValueError("need at least one expansion term")
    cfg = config if config is not None else QuadratureConfig()
    return _expand_time_impl(
        signal, wavelet, a, b, n, remainder, cfg, _time_moment_quadrature
    )


def expand_morlet_time(
    signal: SignalSpec,
    wavelet: WaveletSpec,
    a: float,
    b: float,
    n: int,
    remainder: Union[str, RemainderKind] = "none",
    config: Optional[QuadratureConfig] = None,
) -> ExpansionResult:
    """Time-domain expansion with closed-form modulated-Gaussian moments."""
    if wavelet.kind != WaveletKind.Morlet:
        raise ValueError(
            "closed-form time moments exist only for the modulated-Gaussian "
            f"wavelet, not {wavelet.kind.value!r}"
        )
    if not a > 0.0:
        raise ValueError("the dilation parameter must be positive")
    if n < 1:
        raise ValueError("need at least one expansion term")
    cfg = config if config is not None else QuadratureConfig()

    def moment_fn(w, nu, mirror, _cfg):
        return _time_moment_closed(w, nu, mirror)

    return _expand_time_impl(signal, wavelet, a, b, n, remainder, cfg, moment_fn)


def convergence_order(a_values, errors) -> float:
    """Least-squares slope of log|error| against log(dilation)."""
    a_values = np.asarray(a_values, dtype=float)
    errors = np.asarray(errors, dtype=float)
    if a_values.shape != errors.shape or a_values.size < 2:
        raise ValueError("need matching arrays with at least two points")
    if np.any(a_values <= 0.0) or np.any(errors <= 0.0):
        raise ValueError("dilations and errors must be positive for a log fit")
    slope, _ = np.polyfit(np.log(a_values), np.log(errors), 1)
    return float(slope)
