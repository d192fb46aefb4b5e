"""Benchmark: compiled quadrature kernel versus the pure-numpy fallback.

Times the kernel on the workloads that dominate the package's runtime (the
legislative grid search and high-resolution single-point quadrature), plus
one end-to-end joint argmax per backend. Run from the repository root:

    python benchmarks/bench_kernels.py
"""

from __future__ import annotations

import time

import numpy as np

from delob import ModelParams, outcome_tilde
from delob import _backend, _kernels_py
from delob.oracle import numeric_optimal_legislation
from delob.rng import random_unit

PARAMS = ModelParams(alpha=1.0, beta=1.0, lambda_weight=0.5, shock_bound=1.0,
                     congress_ideal=0.5, agency_ideal=1.0)


def _grid(n):
    p0 = -2.0 + 4.0 * random_unit(7, n)
    d = 2.0 * random_unit(8, n)
    return p0, d


def _time(fn, repeats=5):
    fn()  # warmup
    best = np.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_kernel(impl, label):
    xt = outcome_tilde(PARAMS)
    results = {}

    p0, d = _grid(40_401)  # one 201 x 201 search round
    for mode_label, final in (("final-band", True), ("proposal-band", False)):
        results[f"grid 201x201, 129 nodes, {mode_label}"] = _time(
            lambda: impl.eu_numeric_grid(
                p0, d, xt, PARAMS.congress_ideal, PARAMS.shock_bound,
                PARAMS.alpha, 129, final,
            )
        )

    single_p = np.array([0.3])
    single_d = np.array([0.6])

    def high_res_points():
        for _ in range(200):
            impl.eu_numeric_grid(
                single_p, single_d, xt, PARAMS.congress_ideal,
                PARAMS.shock_bound, PARAMS.alpha, 4097, True,
            )

    results["200 single points, 4097 nodes"] = _time(high_res_points, repeats=3)
    return results


def bench_end_to_end():
    out = {}
    original = _backend._impl
    backends = [("python", _kernels_py)]
    if _backend.HAS_COMPILED:
        from delob import _kernels

        backends.insert(0, ("compiled", _kernels))
    try:
        for label, impl in backends:
            _backend._impl = impl
            out[label] = _time(lambda: numeric_optimal_legislation(PARAMS), repeats=3)
    finally:
        _backend._impl = original
    return out


def main():
    print(f"active backend: {_backend.backend_name()}")
    tables = {"python": bench_kernel(_kernels_py, "python")}
    if _backend.HAS_COMPILED:
        from delob import _kernels

        tables["compiled"] = bench_kernel(_kernels, "compiled")

    workloads = list(tables["python"])
    width = max(len(w) for w in workloads)
    header = f"{'workload':<{width}}  " + "".join(f"{b:>12}" for b in tables)
    if len(tables) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for w in workloads:
        line = f"{w:<{width}}  " + "".join(f"{tables[b][w] * 1e3:>10.2f}ms" for b in tables)
        if len(tables) == 2:
            line += f"{tables['python'][w] / tables['compiled'][w]:>9.1f}x"
        print(line)

    print()
    end_to_end = bench_end_to_end()
    for label, seconds in end_to_end.items():
        print(f"joint argmax end-to-end [{label}]: {seconds * 1e3:.1f}ms")
    if len(end_to_end) == 2:
        print(f"end-to-end speedup: {end_to_end['python'] / end_to_end['compiled']:.1f}x")


if __name__ == "__main__":
    main()
