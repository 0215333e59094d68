"""Command-line interface.

Subcommands::

    coeffs     small-argument wavelet coefficient table
    cwt        transform value at one (a, b) from either oracle
    mellin     regularized Mellin moment of the boundary function
    expand     truncated expansion with optional remainder at one dilation
    sweep      expansion-vs-oracle error table over a dilation grid
    validate   run the built-in numerical validation checks

Options may come from flags or from a JSON config file (``--config``);
flags win over the file, the file wins over defaults.  Unknown config
keys are rejected.  Exit codes: 0 success, 1 runtime/validation failure,
2 invalid arguments, 3 sweep produced non-converged quadrature results.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from typing import Optional

import numpy as np

from .checks import available_checks, run_all
from .expansion import (
    convergence_order,
    expand_frequency,
    expand_morlet_time,
    expand_time,
)
from .mellin import MellinError, MellinMethod, mellin_transform
from .oracle import cwt_fourier, cwt_time
from .quadrature import QuadratureConfig, QuadratureError
from .signals import SignalKind, custom_signal, make_h, make_signal
from .specfun import SpecFunError
from .wavelets import WaveletKind, make_wavelet, small_u_coefficients

_MELLIN_METHODS = {
    "auto": "auto",
    "tail": MellinMethod.SplitTailAnalytic,
    "eps": MellinMethod.EpsExtrapolation,
    "quad": MellinMethod.PureQuadrature,
}


@dataclass
class RunConfig:
    """Merged view of flags, config-file entries, and defaults."""

    signal: str = "lorentzian"
    wavelet: str = "morlet"
    u0: float = 5.0
    b: float = 0.0
    a: float = 0.1
    a_min: float = 0.01
    a_max: float = 0.1
    a_count: int = 8
    log: bool = False
    n: int = 3
    domain: str = "frequency"
    mellin_method: str = "auto"
    oracle: str = "fourier"
    format: str = "csv"
    out: Optional[str] = None
    config: Optional[str] = None
    jobs: int = 1
    tol: Optional[float] = None
    remainder: str = "none"
    z: str = "1.5"
    mirror: bool = False
    amplitude: float = 1.0
    time_scale: float = 1.0


def _merge_config(args: argparse.Namespace) -> RunConfig:
    """Apply precedence: command-line flags > config file > defaults."""
    cfg = RunConfig()
    known = {f.name for f in fields(RunConfig)}
    path = getattr(args, "config", None)
    if path is not None:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ValueError("config file must hold a JSON object")
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(unknown)}")
        for key, value in data.items():
            setattr(cfg, key, value)
    for key, value in vars(args).items():
        if key in known and value is not None:
            setattr(cfg, key, value)
    return cfg


def _quad_config(rc: RunConfig) -> QuadratureConfig:
    if rc.tol is None:
        return QuadratureConfig()
    return QuadratureConfig(rel_tol=float(rc.tol))


def _build_signal(rc: RunConfig):
    kind = SignalKind(rc.signal)
    base = make_signal(kind)
    if rc.amplitude != 1.0 or rc.time_scale != 1.0:
        return custom_signal(base, amplitude=rc.amplitude, time_scale=rc.time_scale)
    return base


def _build_wavelet(rc: RunConfig):
    return make_wavelet(WaveletKind(rc.wavelet), u0=rc.u0)


def _g(x: float) -> str:
    return format(float(x), ".17g")


def _emit(rc: RunConfig, header, rows, json_obj) -> None:
    if rc.format == "json":
        text = json.dumps(json_obj, indent=2) + "\n"
    else:
        lines = [",".join(header)]
        lines += [",".join(str(c) for c in row) for row in rows]
        text = "\n".join(lines) + "\n"
    if rc.out:
        with open(rc.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_coeffs(rc: RunConfig) -> int:
    wav = _build_wavelet(rc)
    table = small_u_coefficients(wav, rc.n)
    rows = [
        (s, _g(c.real), _g(c.imag)) for s, c in enumerate(table.coefficients)
    ]
    obj = {
        "wavelet": rc.wavelet,
        "u0": rc.u0,
        "n": rc.n,
        "coefficients": [[c.real, c.imag] for c in table.coefficients],
    }
    _emit(rc, ("s", "c_re", "c_im"), rows, obj)
    return 0


def _cmd_cwt(rc: RunConfig) -> int:
    sig = _build_signal(rc)
    wav = _build_wavelet(rc)
    qcfg = _quad_config(rc)
    routes = ("time", "fourier") if rc.oracle == "both" else (rc.oracle,)
    rows = []
    obj = {"a": rc.a, "b": rc.b, "routes": {}}
    for route in routes:
        fn = cwt_time if route == "time" else cwt_fourier
        res = fn(sig, wav, rc.a, rc.b, qcfg)
        rows.append(
            (
                route,
                _g(res.value.real),
                _g(res.value.imag),
                _g(res.abs_error_estimate),
                str(res.converged).lower(),
            )
        )
        obj["routes"][route] = {
            "value": [res.value.real, res.value.imag],
            "abs_error_estimate": res.abs_error_estimate,
            "converged": res.converged,
        }
    _emit(
        rc,
        ("route", "value_re", "value_im", "abs_error_estimate", "converged"),
        rows,
        obj,
    )
    return 0


def _cmd_mellin(rc: RunConfig) -> int:
    sig = _build_signal(rc)
    h = make_h(sig, rc.b)
    z = complex(rc.z)
    qcfg = _quad_config(rc)
    method = _MELLIN_METHODS[rc.mellin_method]
    res = mellin_transform(h, z, method, qcfg, mirror=rc.mirror)
    rows = [
        (
            _g(z.real),
            _g(z.imag),
            str(rc.mirror).lower(),
            res.method.value,
            _g(res.value.real),
            _g(res.value.imag),
            _g(res.abs_error_estimate),
        )
    ]
    obj = {
        "z": [z.real, z.imag],
        "b": rc.b,
        "mirror": rc.mirror,
        "method": res.method.value,
        "value": [res.value.real, res.value.imag],
        "abs_error_estimate": res.abs_error_estimate,
    }
    _emit(
        rc,
        ("z_re", "z_im", "mirror", "method", "value_re", "value_im",
         "abs_error_estimate"),
        rows,
        obj,
    )
    return 0


def _expand_once(rc: RunConfig, sig, wav, a: float, qcfg: QuadratureConfig):
    if rc.domain == "time":
        if wav.kind == WaveletKind.Morlet:
            return expand_morlet_time(
                sig, wav, a, rc.b, rc.n, remainder=rc.remainder, config=qcfg
            )
        return expand_time(
            sig, wav, a, rc.b, rc.n, remainder=rc.remainder, config=qcfg
        )
    return expand_frequency(
        sig,
        wav,
        a,
        rc.b,
        rc.n,
        remainder=rc.remainder,
        config=qcfg,
        mellin_method=_MELLIN_METHODS[rc.mellin_method],
    )


def _cmd_expand(rc: RunConfig) -> int:
    sig = _build_signal(rc)
    wav = _build_wavelet(rc)
    qcfg = _quad_config(rc)
    res = _expand_once(rc, sig, wav, rc.a, qcfg)
    rows = [
        (f"term_{s}", _g(t.real), _g(t.imag), _g(e))
        for s, (t, e) in enumerate(zip(res.terms, res.term_error_estimates))
    ]
    rows.append(
        (
            "partial_sum",
            _g(res.partial_sum.real),
            _g(res.partial_sum.imag),
            _g(res.abs_error_estimate),
        )
    )
    rows.append(
        (
            "remainder",
            _g(res.remainder_estimate.real),
            _g(res.remainder_estimate.imag),
            _g(res.remainder_error_estimate),
        )
    )
    rows.append(
        (
            "prediction",
            _g(res.prediction.real),
            _g(res.prediction.imag),
            _g(
                res.abs_error_estimate
                + res.remainder_scale * res.remainder_error_estimate
            ),
        )
    )
    obj = {
        "domain": res.domain,
        "a": res.a,
        "b": res.b,
        "n": res.n,
        "terms": [[t.real, t.imag] for t in res.terms],
        "term_error_estimates": list(map(float, res.term_error_estimates)),
        "partial_sum": [res.partial_sum.real, res.partial_sum.imag],
        "remainder_kind": res.remainder_kind.value,
        "remainder_estimate": [
            res.remainder_estimate.real,
            res.remainder_estimate.imag,
        ],
        "remainder_scale": res.remainder_scale,
        "prediction": [res.prediction.real, res.prediction.imag],
    }
    _emit(rc, ("field", "value_re", "value_im", "abs_error_estimate"), rows, obj)
    return 0


def _sweep_grid(rc: RunConfig) -> np.ndarray:
    if rc.a_count < 1:
        raise ValueError("--a-count must be at least 1")
    if not (rc.a_min > 0.0 and rc.a_max >= rc.a_min):
        raise ValueError("need 0 < --a-min <= --a-max")
    if rc.a_count == 1:
        return np.array([rc.a_min])
    if rc.log:
        return np.geomspace(rc.a_min, rc.a_max, rc.a_count)
    return np.linspace(rc.a_min, rc.a_max, rc.a_count)


def _cmd_sweep(rc: RunConfig) -> int:
    sig = _build_signal(rc)
    wav = _build_wavelet(rc)
    qcfg = _quad_config(rc)
    a_values = _sweep_grid(rc)

    def work(a: float):
        oracle_fn = cwt_time if rc.oracle == "time" else cwt_fourier
        oracle = oracle_fn(sig, wav, float(a), rc.b, qcfg)
        res = _expand_once(rc, sig, wav, float(a), qcfg)
        abs_err = abs(oracle.value - res.partial_sum)
        rel_err = abs_err / abs(oracle.value) if oracle.value != 0.0 else math.nan
        return oracle, res, abs_err, rel_err

    if rc.jobs > 1:
        with ThreadPoolExecutor(max_workers=rc.jobs) as pool:
            results = list(pool.map(work, a_values))
    else:
        results = [work(a) for a in a_values]

    rows = []
    json_rows = []
    abs_errs = []
    all_converged = True
    for a, (oracle, res, abs_err, rel_err) in zip(a_values, results):
        all_converged = all_converged and oracle.converged
        abs_errs.append(abs_err)
        rows.append(
            (
                _g(a),
                _g(oracle.value.real),
                _g(oracle.value.imag),
                _g(res.partial_sum.real),
                _g(res.partial_sum.imag),
                _g(abs_err),
                _g(rel_err),
                rc.n,
                str(oracle.converged).lower(),
            )
        )
        json_rows.append(
            {
                "a": float(a),
                "oracle": [oracle.value.real, oracle.value.imag],
                "expansion": [res.partial_sum.real, res.partial_sum.imag],
                "abs_error": abs_err,
                "rel_error": rel_err,
                "n": rc.n,
                "converged": oracle.converged,
            }
        )
    try:
        order = convergence_order(a_values, abs_errs)
    except ValueError:
        order = math.nan
    rows.append(("order", "", "", "", "", _g(order), "", rc.n, ""))
    obj = {"rows": json_rows, "order": order}
    header = (
        "a",
        "oracle_re",
        "oracle_im",
        "expansion_re",
        "expansion_im",
        "abs_error",
        "rel_error",
        "n",
        "converged",
    )
    _emit(rc, header, rows, obj)
    return 0 if all_converged else 3


def _cmd_validate(args: argparse.Namespace) -> int:
    if args.list:
        for name, desc in available_checks():
            sys.stdout.write(f"{name}: {desc}\n")
        return 0
    names = args.only if args.only else None
    try:
        results = run_all(names)
    except KeyError as exc:
        sys.stderr.write(f"error: {exc.args[0]}\n")
        return 2
    failed = 0
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        if not res.passed:
            failed += 1
        sys.stdout.write(f"{status} {res.name}: {res.detail}\n")
    sys.stdout.write(
        f"{len(results) - failed}/{len(results)} checks passed\n"
    )
    return 0 if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cwtasym",
        description="Small-dilation wavelet-transform expansions with "
        "oracle-grade quadrature.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, *, grid=False, point=True):
        p.add_argument("--signal", choices=[k.value for k in SignalKind
                                            if k != SignalKind.Custom])
        p.add_argument("--wavelet", choices=[k.value for k in WaveletKind])
        p.add_argument("--u0", type=float)
        p.add_argument("--b", type=float)
        if point:
            p.add_argument("--a", type=float)
        if grid:
            p.add_argument("--a-min", dest="a_min", type=float)
            p.add_argument("--a-max", dest="a_max", type=float)
            p.add_argument("--a-count", dest="a_count", type=int)
            p.add_argument("--log", action="store_const", const=True)
        p.add_argument("--n", type=int)
        p.add_argument("--format", choices=["csv", "json"])
        p.add_argument("--out")
        p.add_argument("--config")
        p.add_argument("--tol", type=float)

    p = sub.add_parser("coeffs", help="wavelet coefficient table")
    add_common(p, point=False)

    p = sub.add_parser("cwt", help="transform value from the oracles")
    add_common(p)
    p.add_argument("--oracle", choices=["time", "fourier", "both"])

    p = sub.add_parser("mellin", help="regularized Mellin moment")
    add_common(p, point=False)
    p.add_argument("--z", help="complex exponent, e.g. '2' or '1.5+0.5j'")
    p.add_argument("--mirror", action="store_const", const=True)
    p.add_argument("--mellin-method", dest="mellin_method",
                   choices=sorted(_MELLIN_METHODS))

    p = sub.add_parser("expand", help="truncated expansion at one dilation")
    add_common(p)
    p.add_argument("--domain", choices=["frequency", "time"])
    p.add_argument("--remainder", choices=["none", "integral_m0", "empirical"])
    p.add_argument("--mellin-method", dest="mellin_method",
                   choices=sorted(_MELLIN_METHODS))

    p = sub.add_parser("sweep", help="error table over a dilation grid")
    add_common(p, grid=True, point=False)
    p.add_argument("--domain", choices=["frequency", "time"])
    p.add_argument("--oracle", choices=["time", "fourier"])
    p.add_argument("--mellin-method", dest="mellin_method",
                   choices=sorted(_MELLIN_METHODS))
    p.add_argument("--jobs", type=int)

    p = sub.add_parser("validate", help="run numerical validation checks")
    p.add_argument("--list", action="store_true")
    p.add_argument("--only", action="append")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0

    if args.command == "validate":
        return _cmd_validate(args)

    try:
        rc = _merge_config(args)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2

    dispatch = {
        "coeffs": _cmd_coeffs,
        "cwt": _cmd_cwt,
        "mellin": _cmd_mellin,
        "expand": _cmd_expand,
        "sweep": _cmd_sweep,
    }
    try:
        return dispatch[args.command](rc)
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (MellinError, QuadratureError, SpecFunError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
