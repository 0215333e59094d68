"""Adaptive Gauss-Kronrod quadrature for complex integrands.

Panels are evaluated in batches (one P x 15 node matrix per round trip to the
kernel backend), per-panel errors follow the classical Kronrod rescaling of
|GK15 - G7| against the panel's oscillation measure, and refinement bisects
the worst panels in blocks.  Infinite domains are cut at a radius derived
from a caller-supplied decay envelope and extended until the truncation
bound meets the requested tolerance or hits the truncation radius cap.
Integrable endpoint singularities at the left edge are softened with the
x = y**2 substitution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from . import backends
from .backends import KernelDescriptor

_EPS = 2.220446049250313e-16

# 15-point Kronrod nodes (positive half) and weights; the embedded 7-point
# Gauss rule lives on the odd-index nodes.
_XGK = (
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
)
_WGK = (
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
)
_WG = (
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
)

_NODES = np.array([-x for x in _XGK[:7]] + [0.0] + [x for x in reversed(_XGK[:7])])
_WK15 = np.array(list(_WGK[:7]) + [_WGK[7]] + list(reversed(_WGK[:7])))
_WG15 = np.zeros(15)
_WG15[[1, 3, 5]] = _WG[:3]
_WG15[[13, 11, 9]] = _WG[:3]
_WG15[7] = _WG[3]

_BISECT_BLOCK = 64
_MIN_INITIAL_PANELS = 8
_MAX_PANELS_PER_PIECE = 16384


class QuadratureError(RuntimeError):
    """Raised for domains or options the integrator cannot handle."""


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_subdivisions: int = 2000
    truncation_radius: float = 1e12
    eps0: float = 0.125
    eps_levels: int = 4

    def __post_init__(self):
        if self.rel_tol < 100.0 * _EPS:
            raise ValueError(
                f"rel_tol={self.rel_tol:g} is below 100*machine epsilon"
            )
        if self.abs_tol < 0.0:
            raise ValueError("abs_tol must be nonnegative")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be positive")
        if self.truncation_radius <= 0.0:
            raise ValueError("truncation_radius must be positive")
        if self.eps0 <= 0.0:
            raise ValueError("eps0 must be positive")
        if self.eps_levels < 2:
            raise ValueError("eps_levels must be at least 2")


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    abs_error_estimate: float
    n_evaluations: int
    n_panels: int
    converged: bool


Integrand = Union[KernelDescriptor, Callable[[np.ndarray], np.ndarray]]
Envelope = tuple  # ("exp", C, rate) | ("gauss", C, rate) | ("alg", C, power)


def _as_callable(integrand: Integrand) -> Callable[[np.ndarray], np.ndarray]:
    if isinstance(integrand, KernelDescriptor):
        return lambda x: backends.eval_kernel(integrand, x)
    return integrand


def _panel_eval(evalf, lo: np.ndarray, hi: np.ndarray):
    """Evaluate the GK15 rule on a batch of panels.

    Returns (values, errors, evaluation count).
    """
    c = 0.5 * (lo + hi)
    h = 0.5 * (hi - lo)
    nodes = c[:, None] + h[:, None] * _NODES[None, :]
    fv = np.asarray(evalf(nodes.ravel()), dtype=complex).reshape(nodes.shape)
    resk = fv @ _WK15
    resg = fv @ _WG15
    resabs = np.abs(fv) @ _WK15
    mean = 0.5 * resk
    resasc = np.abs(fv - mean[:, None]) @ _WK15
    raw = np.abs(resk - resg) * h
    resasc_s = resasc * h
    resabs_s = resabs * h
    err = raw.copy()
    mask = (resasc_s != 0.0) & (raw != 0.0)
    err[mask] = resasc_s[mask] * np.minimum(
        1.0, (200.0 * raw[mask] / resasc_s[mask]) ** 1.5
    )
    err = np.maximum(err, 50.0 * _EPS * resabs_s)
    return resk * h, err, nodes.size


def _refine(evalf, edges: np.ndarray, config: QuadratureConfig, budget: int):
    """Adaptively bisect the worst panels until the tolerance target is met.

    Returns (value, error, n_evaluations, n_panels, bisections_used).
    """
    lo = edges[:-1].astype(float)
    hi = edges[1:].astype(float)
    vals = np.empty(lo.size, dtype=complex)
    errs = np.empty(lo.size, dtype=float)
    neval = 0
    chunk = 65536
    for start in range(0, lo.size, chunk):
        sl = slice(start, start + chunk)
        vals[sl], errs[sl], ne = _panel_eval(evalf, lo[sl], hi[sl])
        neval += ne
    used = 0
    while True:
        total = vals.sum()
        err_total = errs.sum()
        target = max(config.abs_tol, config.rel_tol * abs(total))
        if err_total <= target or used >= budget:
            return total, err_total, neval, lo.size, used
        nsplit = min(_BISECT_BLOCK, budget - used, lo.size)
        worst = np.argsort(-errs, kind="stable")[:nsplit]
        mid = 0.5 * (lo[worst] + hi[worst])
        # Panels at rounding width cannot be split further; retire them.
        splittable = (mid > lo[worst]) & (mid < hi[worst])
        if not np.any(splittable):
            return total, err_total, neval, lo.size, used
        worst = worst[splittable]
        mid = mid[splittable]
        new_lo = np.concatenate([lo[worst], mid])
        new_hi = np.concatenate([mid, hi[worst]])
        new_vals, new_errs, ne = _panel_eval(evalf, new_lo, new_hi)
        neval += ne
        keep = np.ones(lo.size, dtype=bool)
        keep[worst] = False
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        vals = np.concatenate([vals[keep], new_vals])
        errs = np.concatenate([errs[keep], new_errs])
        used += worst.size


def _initial_edges(
    lo: float,
    hi: float,
    breakpoints: Sequence[float],
    period_hint: Optional[float],
    geometric_from: Optional[float],
) -> np.ndarray:
    pts = [lo, hi]
    for p in breakpoints:
        if lo < p < hi:
            pts.append(float(p))
    pts = sorted(set(pts))
    edges = []
    for left, right in zip(pts[:-1], pts[1:]):
        edges.append(left)
        if geometric_from is not None and right > geometric_from > max(left, 0.0):
            g = max(left, geometric_from)
            if g > left:
                edges.extend(_linear_fill(left, g, period_hint))
                edges.append(g)
            x = g
            while x * 2.0 < right:
                x *= 2.0
                edges.append(x)
        else:
            edges.extend(_linear_fill(left, right, period_hint))
    edges.append(pts[-1])
    edges = np.array(sorted(set(edges)))
    if edges.size - 1 < _MIN_INITIAL_PANELS:
        per = int(math.ceil(_MIN_INITIAL_PANELS / (edges.size - 1)))
        if per > 1:
            parts = [
                np.linspace(a, b, per + 1)[:-1] for a, b in zip(edges[:-1], edges[1:])
            ]
            edges = np.concatenate(parts + [edges[-1:]])
    return edges


def _linear_fill(left: float, right: float, period_hint: Optional[float]):
    """Interior edges that keep each panel at most half an oscillation wide."""
    if period_hint is None or not np.isfinite(period_hint) or period_hint <= 0.0:
        return []
    width = right - left
    n = int(math.ceil(width / (0.5 * period_hint)))
    n = min(max(n, 1), _MAX_PANELS_PER_PIECE)
    if n <= 1:
        return []
    return list(np.linspace(left, right, n + 1)[1:-1])


def _envelope_tail_bound(envelope: Envelope, radius: float) -> float:
    kind, c, p = envelope
    if kind == "exp":
        return c * math.exp(-p * radius) / p
    if kind == "gauss":
        return c * math.exp(-p * radius * radius) / (2.0 * p * max(radius, 1e-300))
    if kind == "alg":
        if p <= 1.0:
            raise QuadratureError(
                f"algebraic envelope with power {p:g} <= 1 does not converge"
            )
        return c * radius ** (1.0 - p) / (p - 1.0)
    raise QuadratureError(f"unknown envelope kind {kind!r}")


def _cut_radius(envelope: Envelope, tol: float, cap: float) -> float:
    kind, c, p = envelope
    tol = max(tol, 1e-300)
    if kind == "exp":
        u = math.log(max(c / (p * tol), 2.0)) / p
    elif kind == "gauss":
        u = math.sqrt(max(math.log(max(c / tol, 2.0)) / p, 1.0))
        for _ in range(3):
            arg = c / (2.0 * p * u * tol)
            if arg <= 2.0:
                break
            u = math.sqrt(math.log(arg) / p)
    elif kind == "alg":
        if p <= 1.0:
            raise QuadratureError(
                f"algebraic envelope with power {p:g} <= 1 does not converge"
            )
        u = (c / ((p - 1.0) * tol)) ** (1.0 / (p - 1.0))
    else:
        raise QuadratureError(f"unknown envelope kind {kind!r}")
    return min(max(u, 1.0), cap)


def power_exp_cut(c: float, sigma: float, rate: float, delta: float) -> tuple:
    """Radius U with the tail of c*u**sigma*e^(-rate*u) below delta, plus bound."""
    if not rate > 0.0:
        raise QuadratureError("exponential cut needs a positive rate")
    u = max(1.0, 2.0 * sigma / rate, math.log(max(2.0 * c / (rate * delta), 2.0)) / rate)
    for _ in range(4):
        u = max(
            1.0,
            2.0 * sigma / rate,
            (math.log(max(2.0 * c / (rate * delta), 2.0)) + sigma * math.log(u)) / rate,
        )
    bound = 2.0 * c * u ** sigma * math.exp(-rate * u) / rate
    return u, bound


def power_gauss_cut(c: float, sigma: float, rate: float, delta: float) -> tuple:
    """Radius U with the tail of c*u**sigma*e^(-rate*u*u) below delta, plus bound."""
    if not rate > 0.0:
        raise QuadratureError("Gaussian cut needs a positive rate")
    u = max(1.0, math.sqrt(max((sigma + 1.0) / (2.0 * rate), 0.0)) + 1.0)
    for _ in range(6):
        arg = max(c * u ** (sigma - 1.0) / (rate * delta), 2.0)
        u = max(u, math.sqrt(math.log(arg) / rate))
    bound = c * u ** (sigma - 1.0) * math.exp(-rate * u * u) / rate
    return u, bound


def richardson_epsilon(values, spacing_ratio: float = 2.0, noise_floor: float = 0.0):
    """Extrapolate damped evaluations F(eps_k), eps_k = eps0/ratio**k, to 0.

    Assumes F is regular in eps so each Richardson column removes one power.
    The table is rebuilt as each finer level accrues; corrections[k] is how
    much the extrapolated limit moved when level k+1 was added.  For a
    regular F these level-to-level corrections shrink geometrically; a
    correction sequence that only grows — and ends above ``noise_floor``, so
    that roundoff-level wiggles are not mistaken for divergence — means the
    successive estimates are running away (the undamped limit does not
    exist) and raises.
    """
    vals = [complex(v) for v in values]
    levels = len(vals)
    if levels < 2:
        raise QuadratureError("extrapolation needs at least two levels")

    def _limit(table):
        j = 1
        while len(table) > 1:
            table = [
                table[i + 1]
                + (table[i + 1] - table[i]) / (spacing_ratio ** j - 1.0)
                for i in range(len(table) - 1)
            ]
            j += 1
        return table[0]

    estimates = [vals[0]] + [_limit(vals[:m]) for m in range(2, levels + 1)]
    corrections = [
        abs(estimates[k + 1] - estimates[k]) for k in range(len(estimates) - 1)
    ]
    if (
        len(corrections) >= 2
        and all(
            corrections[i + 1] > corrections[i]
            for i in range(len(corrections) - 1)
        )
        and corrections[-1] > noise_floor
    ):
        raise QuadratureError(
            "extrapolation to the undamped limit is unstable: corrections "
            f"grew {corrections[0]:.3e} -> {corrections[-1]:.3e}"
        )
    return estimates[-1], corrections


def integrate(
    integrand: Integrand,
    domain: tuple,
    config: Optional[QuadratureConfig] = None,
    *,
    breakpoints: Sequence[float] = (),
    period_hint: Optional[float] = None,
    envelope: Optional[Envelope] = None,
    left_singularity: Optional[float] = None,
    tail_bound: float = 0.0,
    geometric_from: Optional[float] = None,
) -> QuadratureResult:
    """Integrate a complex integrand over ``domain = (lo, hi)``.

    ``integrand`` is either a backend kernel descriptor or a vectorized
    callable mapping a real node array to complex values.  Infinite endpoints
    require ``envelope``, a bound ``("exp", C, r)``, ``("gauss", C, r)`` or
    ``("alg", C, p)`` on |integrand| valid for large |x|.  ``breakpoints``
    seed panel edges at known kinks or features, ``period_hint`` keeps
    initial panels at most half an oscillation wide, ``left_singularity``
    softens an integrable singularity at a finite left endpoint via the
    x = y**2 substitution, ``geometric_from`` switches to doubling panels
    beyond the given radius (slowly decaying tails), and ``tail_bound`` is
    added to the reported error for truncations performed by the caller.
    """
    cfg = config if config is not None else QuadratureConfig()
    lo, hi = float(domain[0]), float(domain[1])
    if math.isnan(lo) or math.isnan(hi) or lo >= hi:
        raise QuadratureError(f"invalid domain ({lo!r}, {hi!r})")
    evalf = _as_callable(integrand)

    trunc = 0.0
    cut_lo, cut_hi = lo, hi
    if math.isinf(lo) or math.isinf(hi):
        if envelope is None:
            raise QuadratureError("infinite domain requires a decay envelope")
        radius = _cut_radius(envelope, cfg.abs_tol, cfg.truncation_radius)
        if math.isinf(lo):
            cut_lo = -radius
        if math.isinf(hi):
            cut_hi = radius
        if cut_lo >= cut_hi:
            cut_lo, cut_hi = min(cut_lo, -1.0), max(cut_hi, 1.0)
        sides = (1 if math.isinf(lo) else 0) + (1 if math.isinf(hi) else 0)
        trunc = sides * _envelope_tail_bound(envelope, radius)

    value = 0.0 + 0.0j
    err = 0.0
    neval = 0
    npanels = 0
    budget = cfg.max_subdivisions

    sing_hi = cut_lo
    if left_singularity is not None:
        if math.isinf(lo):
            raise QuadratureError("left_singularity requires a finite left endpoint")
        sing_hi = min(cut_lo + 1.0, cut_hi)
        ylim = math.sqrt(sing_hi - cut_lo)
        if isinstance(integrand, KernelDescriptor) and cut_lo == 0.0:
            sub_evalf = _as_callable(integrand.squared())
        else:
            base = cut_lo
            sub_evalf = lambda y: 2.0 * y * evalf(base + y * y)
        edges = _initial_edges(0.0, ylim, (), None, None)
        v, e, ne, npan, used = _refine(sub_evalf, edges, cfg, budget)
        value += v
        err += e
        neval += ne
        npanels += npan
        budget -= used

    if sing_hi < cut_hi:
        edges = _initial_edges(
            sing_hi, cut_hi, breakpoints, period_hint, geometric_from
        )
        v, e, ne, npan, used = _refine(evalf, edges, cfg, budget)
        value += v
        err += e
        neval += ne
        npanels += npan
        budget -= used

    # Extend the truncation radius until the tail bound is small relative to
    # the value actually found (the initial cut only targeted abs_tol).
    while trunc > 0.0 and envelope is not None:
        target = 0.5 * max(cfg.abs_tol, cfg.rel_tol * abs(value))
        if trunc <= target:
            break
        radius_new = min(2.0 * radius, cfg.truncation_radius)
        if radius_new <= radius:
            break
        for sign, infinite in ((1.0, math.isinf(hi)), (-1.0, math.isinf(lo))):
            if not infinite:
                continue
            seg_lo, seg_hi = sorted((sign * radius, sign * radius_new))
            edges = _initial_edges(
                seg_lo, seg_hi, breakpoints, period_hint,
                geometric_from if sign > 0 else None,
            )
            v, e, ne, npan, used = _refine(evalf, edges, cfg, max(budget, 64))
            value += v
            err += e
            neval += ne
            npanels += npan
            budget = max(budget - used, 0)
        radius = radius_new
        sides = (1 if math.isinf(lo) else 0) + (1 if math.isinf(hi) else 0)
        trunc = sides * _envelope_tail_bound(envelope, radius)

    total_err = err + trunc + tail_bound
    target = max(cfg.abs_tol, cfg.rel_tol * abs(value))
    return QuadratureResult(
        value=complex(value),
        abs_error_estimate=float(total_err),
        n_evaluations=neval,
        n_panels=npanels,
        converged=bool(total_err <= 10.0 * target),
    )
