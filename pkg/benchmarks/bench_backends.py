"""Timing comparison of the pure-numpy and compiled kernel backends.

Times each integrand family on batches of the size the adaptive driver
actually uses (one Gauss-Kronrod panel batch) up to large vectorized calls,
plus one end-to-end transform evaluation per backend.

Run:  python3 benchmarks/bench_backends.py [--repeats N]
"""

import argparse
import time

import numpy as np

from cwtasym.backends import (
    SIG_LORENTZIAN,
    SIG_TWO_SIDED_EXP,
    WAV_HAAR,
    WAV_MORLET,
    available_backends,
    cwt_fourier_descriptor,
    cwt_time_descriptor,
    mellin_h_descriptor,
    numpy_backend,
    psi_moment_descriptor,
    set_backend,
)
from cwtasym.oracle import cwt_fourier
from cwtasym.signals import SignalKind, make_signal
from cwtasym.wavelets import WaveletKind, make_wavelet

_CASES = [
    ("time lorentzian*morlet", cwt_time_descriptor(SIG_LORENTZIAN, WAV_MORLET, 0.3, 0.7, 5.0)),
    ("fourier two_sided*haar", cwt_fourier_descriptor(SIG_TWO_SIDED_EXP, WAV_HAAR, 1, 0.3, 1.0, 0.0)),
    ("mellin lorentzian b=1", mellin_h_descriptor(SIG_LORENTZIAN, 1, 1.0, 1.5 + 0.0j, 0.05)),
    ("moment morlet", psi_moment_descriptor(WAV_MORLET, 1, 5.0, 2.5 + 0.0j)),
]


def _time_call(fn, repeats):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(repeats):
    backends = {"numpy": numpy_backend}
    if "cython" in available_backends():
        from cwtasym.backends import _kernels

        backends["cython"] = _kernels
    header = f"{'integrand':26s} {'nodes':>7s}" + "".join(
        f" {name + ' (us)':>13s}" for name in backends
    )
    if len(backends) == 2:
        header += f" {'speedup':>8s}"
    print(header)
    print("-" * len(header))
    for label, desc in _CASES:
        for size in (15, 240, 4096):
            x = np.linspace(0.01, 20.0, size)
            times = []
            for mod in backends.values():
                mod.eval_kernel(desc, x)  # warm up
                times.append(_time_call(lambda m=mod: m.eval_kernel(desc, x),
                                        repeats) * 1e6)
            line = f"{label:26s} {size:7d}" + "".join(f" {t:13.2f}" for t in times)
            if len(times) == 2:
                line += f" {times[0] / times[1]:7.2f}x"
            print(line)


def bench_transform(repeats):
    sig = make_signal(SignalKind.Lorentzian)
    wav = make_wavelet(WaveletKind.Morlet, u0=5.0)
    print()
    print("end-to-end transform value (a=0.05, b=0.5):")
    for name in available_backends():
        prev = set_backend(name)
        try:
            t = _time_call(lambda: cwt_fourier(sig, wav, 0.05, 0.5), repeats)
            print(f"  {name:8s} {t * 1e3:8.3f} ms")
        finally:
            set_backend(prev)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=7)
    args = ap.parse_args()
    print(f"available backends: {', '.join(available_backends())}")
    bench_kernels(args.repeats)
    bench_transform(args.repeats)


if __name__ == "__main__":
    main()
