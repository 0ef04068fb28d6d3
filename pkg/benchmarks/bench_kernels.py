#!/usr/bin/env python3
"""Times the compiled kernels against the numpy reference implementations.

Run from the repository root after building the extension:

    python3 benchmarks/bench_kernels.py [--repeat 5]

The two hot paths are (a) the radial propagator integrand evaluated on
Gauss-Kronrod node batches (the double-precision fast path of every |g_n|^2
sweep) and (b) the number-dyad Laguerre series over a phase-space lattice
(every Wigner panel).
"""

import argparse
import math
import time

import numpy as np


def _load_backends():
    import hkbose.kernels._ref as ref
    try:
        import hkbose.kernels._core as core
    except ImportError:
        core = None
    return ref, core


def _time(fn, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_gn(ref, core, repeat):
    s = np.linspace(1e-3, 120.0, 100_000)
    args = (8, 0.63, 7.5, True)
    rows = []
    t_ref = _time(lambda: ref.gn_integrand_batch(s, *args), repeat)
    rows.append(("gn_integrand_batch (1e5 nodes)", "numpy", t_ref, 1.0))
    if core is not None:
        t_core = _time(lambda: core.gn_integrand_batch(s, *args), repeat)
        rows.append(("gn_integrand_batch (1e5 nodes)", "compiled", t_core,
                     t_ref / t_core))
        worst = np.max(np.abs(core.gn_integrand_batch(s, *args)
                              - ref.gn_integrand_batch(s, *args)))
        assert worst < 1e-13, f"backend mismatch: {worst}"
    return rows


def bench_wigner(ref, core, repeat):
    rng = np.random.default_rng(1)
    coeffs = rng.normal(size=41) + 1j * rng.normal(size=41)
    ax = np.arange(-4.0, 4.0001, 0.05)
    re, im = np.meshgrid(ax, ax, indexing="ij")
    re = np.ascontiguousarray(re.ravel())
    im = np.ascontiguousarray(im.ravel())
    rows = []
    t_ref = _time(lambda: ref.wigner_series_batch(coeffs, re, im), repeat)
    rows.append((f"wigner_series_batch ({re.size} pts, n_cut=40)", "numpy",
                 t_ref, 1.0))
    if core is not None:
        t_core = _time(lambda: core.wigner_series_batch(coeffs, re, im), repeat)
        rows.append((f"wigner_series_batch ({re.size} pts, n_cut=40)",
                     "compiled", t_core, t_ref / t_core))
        worst = np.max(np.abs(core.wigner_series_batch(coeffs, re, im)
                              - ref.wigner_series_batch(coeffs, re, im)))
        assert worst < 1e-9, f"backend mismatch: {worst}"
    return rows


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    ref, core = _load_backends()
    if core is None:
        print("compiled extension not available; timing the fallback only")

    rows = bench_gn(ref, core, args.repeat) + bench_wigner(ref, core, args.repeat)
    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'backend':<9} {'best (ms)':>10} {'speedup':>8}")
    for name, backend, seconds, speedup in rows:
        print(f"{name:<{width}}  {backend:<9} {seconds * 1e3:>10.2f} "
              f"{speedup:>7.2f}x")


if __name__ == "__main__":
    main()
