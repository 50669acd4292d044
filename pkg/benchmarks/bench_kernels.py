"""Time the compiled kernels against their numpy twins.

Two hot loops exist in both flavours: the one-period monodromy raster
behind stability maps, and the multistart descent behind minima censuses.
This script runs each pair on identical inputs, checks that the outputs
agree, and prints a small table.  Run it from the repository root:

    python benchmarks/bench_kernels.py [--nx 120] [--ny 120] [--seeds 41]

The numba path needs one warmup call for jit compilation, which is timed
separately so the steady-state ratio is honest.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from drivendicke import accel
from drivendicke.core import GridSpec, ModelParams
from drivendicke.landscape import default_seed_grid, find_minima
from drivendicke.mathieu import stability_map


def timed(fn, repeats: int = 3) -> tuple[float, object]:
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_monodromy(nx: int, ny: int) -> dict[str, float]:
    params = ModelParams(omega=0.05, omega0=0.05, g=0.0, dg=0.2, Omega=1.0)
    grid = GridSpec(x_min=0.0, x_max=0.8, nx=nx, y_min=0.02, y_max=1.6, ny=ny)

    accel.force_numpy(True)
    try:
        t_numpy, ref = timed(lambda: stability_map(params, grid, steps_per_period=2000))
    finally:
        accel.force_numpy(None)

    if accel.NUMBA_AVAILABLE:
        accel.force_numpy(False)
        try:
            t_warm, _ = timed(lambda: stability_map(params, grid, steps_per_period=2000), repeats=1)
            t_numba, res = timed(lambda: stability_map(params, grid, steps_per_period=2000))
        finally:
            accel.force_numpy(None)
        drift = max(
            np.abs(res.trace_plus - ref.trace_plus).max(),
            np.abs(res.trace_minus - ref.trace_minus).max(),
        )
        assert drift < 1e-9, f"paths disagree: {drift:.3e}"
    else:
        t_warm = t_numba = float("nan")
    return {"numpy": t_numpy, "numba": t_numba, "jit": t_warm}


def bench_multistart(seeds: int) -> dict[str, float]:
    params = ModelParams(omega=0.05, omega0=0.05, g=0.0975, dg=2.5, Omega=1.0)
    grid = default_seed_grid(nx=seeds, ny=seeds)

    accel.force_numpy(True)
    try:
        t_numpy, ref = timed(lambda: find_minima(params, seed_grid=grid, check_seeds=False))
    finally:
        accel.force_numpy(None)

    if accel.NUMBA_AVAILABLE:
        accel.force_numpy(False)
        try:
            t_warm, _ = timed(lambda: find_minima(params, seed_grid=grid, check_seeds=False), repeats=1)
            t_numba, res = timed(lambda: find_minima(params, seed_grid=grid, check_seeds=False))
        finally:
            accel.force_numpy(None)
        assert res.n_local == ref.n_local, "paths found different minima counts"
    else:
        t_warm = t_numba = float("nan")
    return {"numpy": t_numpy, "numba": t_numba, "jit": t_warm}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--nx", type=int, default=120)
    parser.add_argument("--ny", type=int, default=120)
    parser.add_argument("--seeds", type=int, default=41)
    args = parser.parse_args()

    print(f"numba available: {accel.NUMBA_AVAILABLE}, threads: {accel.set_threads(None)}")
    rows = [
        (f"monodromy raster {args.nx}x{args.ny} (2000 steps)", bench_monodromy(args.nx, args.ny)),
        (f"multistart descent {args.seeds}x{args.seeds} seeds", bench_multistart(args.seeds)),
    ]
    print(f"{'kernel':<42} {'numpy':>9} {'numba':>9} {'speedup':>8} {'1st call':>9}")
    for name, t in rows:
        ratio = t["numpy"] / t["numba"] if t["numba"] == t["numba"] else float("nan")
        print(
            f"{name:<42} {t['numpy']:>8.3f}s {t['numba']:>8.3f}s {ratio:>7.1f}x {t['jit']:>8.3f}s"
        )


if __name__ == "__main__":
    main()
