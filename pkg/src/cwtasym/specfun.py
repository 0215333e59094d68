"""Complex special functions: Gamma, upper incomplete Gamma, parabolic cylinder D.

Everything here is self-contained double-precision code.  Each routine returns
a SpecFunResult carrying the value, a (heuristic but conservative) absolute
error estimate, and the evaluation method that was used.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

_EPS = 2.220446049250313e-16
_SQRT_PI = math.sqrt(math.pi)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


class SpecFunMethod(Enum):
    Series = "series"
    ContinuedFraction = "continued_fraction"
    Reflection = "reflection"


@dataclass(frozen=True)
class SpecFunResult:
    value: complex
    abs_error_estimate: float
    method: SpecFunMethod


class SpecFunError(ArithmeticError):
    """Raised on poles, series divergence, or loss of convergence."""


# Lanczos approximation, g = 7, 9 coefficients.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _is_nonpositive_integer(z: complex, tol: float = 0.0) -> bool:
    if abs(z.imag) > tol:
        return False
    r = z.real
    return r <= 0.5 and abs(r - round(r)) <= tol and round(r) <= 0


def _lanczos(z: complex) -> complex:
    # valid for Re z >= 0.5
    zm = z - 1.0
    acc = _LANCZOS[0]
    for i in range(1, 9):
        acc += _LANCZOS[i] / (zm + i)
    t = zm + _LANCZOS_G + 0.5
    return _SQRT_2PI * t ** (zm + 0.5) * cmath.exp(-t) * acc


def gamma_complex(z: complex) -> SpecFunResult:
    """Gamma(z) for complex z away from the nonpositive-integer poles."""
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise SpecFunError(f"gamma pole at z={z}")
    if z.real >= 0.5:
        val = _lanczos(z)
        est = abs(val) * 1e-13 * (1.0 + abs(z) / 25.0)
        return SpecFunResult(val, est, SpecFunMethod.Series)
    s = cmath.sin(math.pi * z)
    if s == 0:
        raise SpecFunError(f"gamma pole at z={z}")
    val = math.pi / (s * _lanczos(1.0 - z))
    # conditioning of the reflection is governed by distance to the poles
    cond = 1.0 + abs(math.pi * z) * abs(cmath.cos(math.pi * z) / s)
    est = abs(val) * (1e-13 * (1.0 + abs(z) / 25.0) + _EPS * cond)
    return SpecFunResult(val, est, SpecFunMethod.Reflection)


def _e1_series(x: complex) -> tuple[complex, float]:
    """E1(x) = Gamma(0, x) by the classical small-argument series."""
    euler = 0.5772156649015328606
    total = -euler - cmath.log(x)
    term = 1.0 + 0j
    abs_sum = abs(total)
    for k in range(1, 400):
        term *= -x / k
        inc = -term / k
        total += inc
        abs_sum += abs(inc)
        if abs(inc) <= _EPS * abs(total):
            return total, _EPS * abs_sum * 4.0 + abs(inc)
    raise SpecFunError(f"E1 series failed to converge at x={x}")


def _lower_gamma_series(a: complex, x: complex) -> tuple[complex, float]:
    """lower gamma(a, x) = x^a e^(-x) sum_k x^k / (a (a+1) ... (a+k))."""
    term = 1.0 / a
    total = term
    abs_sum = abs(term)
    for k in range(1, 1000):
        term *= x / (a + k)
        total += term
        abs_sum += abs(term)
        if abs(term) <= _EPS * abs(total):
            scale = cmath.exp(a * cmath.log(x) - x)
            return scale * total, abs(scale) * (_EPS * abs_sum * 4.0 + abs(term))
    raise SpecFunError(f"incomplete-gamma series failed to converge (a={a}, x={x})")


def _upper_gamma_cf(s: complex, x: complex) -> tuple[complex, float, int]:
    """Gamma(s, x) by the Lentz continued fraction; returns (value, residual, iters)."""
    tiny = 1e-300
    b0 = x + 1.0 - s
    f = b0 if abs(b0) > tiny else tiny
    c = f
    d = 0.0 + 0j
    delta = 2.0 + 0j
    for k in range(1, 600):
        ak = k * (s - k)
        bk = b0 + 2.0 * k
        d = bk + ak * d
        if abs(d) < tiny:
            d = tiny
        c = bk + ak / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-15:
            val = cmath.exp(-x + s * cmath.log(x)) / f
            return val, abs(val) * (abs(delta - 1.0) + _EPS * k), k
    raise SpecFunError(
        f"incomplete-gamma continued fraction stalled (s={s}, x={x}, "
        f"residual={abs(delta - 1.0):.3e})"
    )


def upper_incomplete_gamma(s: complex, x: complex) -> SpecFunResult:
    """Gamma(s, x) with the principal branch of x^s.

    Continued fraction for large |x|, series plus downward recurrence
    otherwise; supports purely imaginary x.
    """
    s = complex(s)
    x = complex(x)
    if x == 0:
        if s.real > 0:
            g = gamma_complex(s)
            return SpecFunResult(g.value, g.abs_error_estimate, SpecFunMethod.Series)
        raise SpecFunError("Gamma(s, 0) requires Re s > 0")
    if abs(x) >= max(4.0, abs(s)) and abs(cmath.phase(x)) <= 0.9 * math.pi:
        val, est, _ = _upper_gamma_cf(s, x)
        return SpecFunResult(val, est, SpecFunMethod.ContinuedFraction)

    # Series route: raise Re s above 1/2, then recur back down.
    m = 0 if s.real > 0.5 else int(math.ceil(0.5 - s.real)) + 1
    top = s + m
    low, low_err = _lower_gamma_series(top, x)
    g = gamma_complex(top)
    val = g.value - low
    est = g.abs_error_estimate + low_err + _EPS * (abs(g.value) + abs(low))
    for j in range(m - 1, -1, -1):
        sj = s + j
        piece = cmath.exp(sj * cmath.log(x) - x)
        if sj == 0:
            # The recurrence cannot cross s = 0; restart from Gamma(0, x) = E1(x).
            val, est = _e1_series(x)
            continue
        val = (val - piece) / sj
        est = (est + _EPS * abs(piece)) / abs(sj)
    return SpecFunResult(val, est, SpecFunMethod.Series)


def _kummer_series(a: complex, b: complex, w: complex) -> tuple[complex, float]:
    term = 1.0 + 0j
    total = term
    abs_sum = 1.0
    for k in range(0, 20000):
        term *= (a + k) * w / ((b + k) * (k + 1.0))
        total += term
        abs_sum += abs(term)
        if abs(term) <= _EPS * abs(total) and k > 2:
            return total, _EPS * abs_sum * 4.0 + abs(term) * 4.0
    raise SpecFunError(f"confluent series failed to converge (a={a}, b={b}, w={w})")


def _kummer(a: complex, b: complex, w: complex) -> tuple[complex, float]:
    """M(a, b, w); for Re w < 0 apply the e^w M(b-a, b, -w) transformation."""
    if w.real < 0:
        val, err = _kummer_series(b - a, b, -w)
        scale = cmath.exp(w)
        return scale * val, abs(scale) * err + _EPS * abs(scale * val) * 4.0
    val, err = _kummer_series(a, b, w)
    return val, err


def _recip_gamma(z: complex) -> complex:
    if abs(z.imag) < 1e-12 and abs(z.real - round(z.real)) < 1e-12 and round(z.real) <= 0:
        return 0.0 + 0j
    return 1.0 / gamma_complex(z).value


def parabolic_cylinder_D(nu: complex, z: complex) -> SpecFunResult:
    """D_nu(z) via the two-Kummer-series decomposition in w = z^2/2."""
    nu = complex(nu)
    z = complex(z)
    if abs(z) > 30.0 or nu.real < -20.0:
        raise SpecFunError(
            f"parabolic cylinder series outside supported range (nu={nu}, z={z})"
        )
    w = 0.5 * z * z
    m1, e1 = _kummer(-0.5 * nu, 0.5, w)
    m2, e2 = _kummer(0.5 * (1.0 - nu), 1.5, w)
    r1 = _recip_gamma(0.5 * (1.0 - nu))
    r2 = _recip_gamma(-0.5 * nu)
    pre = cmath.exp(0.5 * nu * math.log(2.0) - 0.5 * w)
    val = pre * (_SQRT_PI * r1 * m1 - _SQRT_2PI * z * r2 * m2)
    est = abs(pre) * (_SQRT_PI * abs(r1) * e1 + _SQRT_2PI * abs(z) * abs(r2) * e2)
    est += 8.0 * _EPS * abs(val)
    return SpecFunResult(val, est, SpecFunMethod.Series)


def oscillatory_power_tail(
    sigma: complex, c: float, radius: float
) -> tuple[complex, float]:
    """The Abel-regularized integral of t**(sigma-1) * e^{ict} over (radius, inf).

    For c != 0 this rotates onto the incomplete-Gamma function,
    (-ic)**(-sigma) * Gamma(sigma, -ic*radius); for c = 0 it reduces to the
    elementary power tail, which requires Re(sigma) < 0 to converge.
    Returns (value, absolute error estimate).
    """
    sigma = complex(sigma)
    if not radius > 0.0:
        raise ValueError("radius must be positive")
    if abs(c) * radius < 1e-8:
        if sigma.real >= 0.0:
            raise SpecFunError(
                f"power tail with Re(sigma)={sigma.real:g} >= 0 diverges at c=0"
            )
        val = -cmath.exp(sigma * math.log(radius)) / sigma
        # First-order sensitivity to the dropped phase.
        err = abs(c) * radius * abs(val) + 4.0 * _EPS * abs(val)
        return val, err
    q = complex(0.0, -c)
    g = upper_incomplete_gamma(sigma, q * radius)
    scale = cmath.exp(-sigma * cmath.log(q))
    val = scale * g.value
    err = abs(scale) * g.abs_error_estimate + 4.0 * _EPS * abs(val)
    return val, err
