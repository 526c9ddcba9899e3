"""Compare the compiled kernels with the numpy fallback.

Run with ``python benchmarks/bench_kernels.py``.  Times each kernel on both
backends (when the extension is built), checks they agree, and times a full
300 GHz to 2.1 THz spectrum over 10^4 synthetic water lines, which should
finish in under 10 s.
"""

import argparse
import time

import numpy as np

from thzqkd import _pykernels, kernels
from thzqkd.atmosphere import MoistAir, SpectralLine, total_absorption_spectrum
from thzqkd.atmosphere.absorption import WING_CUTOFF

try:
    from thzqkd import _ckernels
except ImportError:
    _ckernels = None

SPECTRUM_BUDGET_S = 10.0


def best_of(func, repeat):
    times = []
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = func()
        times.append(time.perf_counter() - start)
    return min(times), result


def synthetic_lines(count, seed=0):
    rng = np.random.default_rng(seed)
    centers = rng.uniform(5.0, 75.0, count)
    return [SpectralLine(float(center), float(10 ** rng.uniform(-24, -19)),
                         float(rng.uniform(0.05, 0.11)), float(rng.uniform(0.3, 0.5)),
                         float(rng.uniform(0, 2000)), float(rng.uniform(0.5, 0.8)))
            for center in centers]


def kernel_cases(n_lines):
    rng = np.random.default_rng(1)
    grid = np.arange(300, 2101) * 1e9 / 29.9792458e9
    centers = rng.uniform(5.0, 75.0, n_lines)
    strength = 10 ** rng.uniform(-24, -19, n_lines)
    width = rng.uniform(0.05, 0.15, n_lines)
    return {
        "imd_count_table N=128 r=120": lambda mod: mod.imd_count_table(128, 120),
        "imd_count_table N=256 r=560": lambda mod: mod.imd_count_table(256, 560),
        f"line_absorption_sum {grid.size} pts x {n_lines} lines":
            lambda mod: mod.line_absorption_sum(grid, centers, strength, width, WING_CUTOFF),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--lines", type=int, default=10_000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)

    print(f"active backend: {kernels.BACKEND}")
    backends = [("python", _pykernels)]
    if _ckernels is not None:
        backends.insert(0, ("cython", _ckernels))
    else:
        print("compiled extension not built; timing the fallback only")

    print(f"{'kernel':45s} " + " ".join(f"{name:>10s}" for name, _ in backends) + "  speedup")
    for label, call in kernel_cases(args.lines).items():
        timings, outputs = [], []
        for _, mod in backends:
            elapsed, out = best_of(lambda: call(mod), args.repeat)
            timings.append(elapsed)
            outputs.append(np.asarray(out))
        if len(outputs) == 2 and not np.allclose(outputs[0], outputs[1], rtol=1e-12, atol=0):
            raise SystemExit(f"backends disagree on {label}")
        speedup = f"{timings[-1] / timings[0]:7.1f}x" if len(timings) == 2 else ""
        print(f"{label:45s} " + " ".join(f"{secs:9.4f}s" for secs in timings) + f"  {speedup}")

    lines = synthetic_lines(args.lines)
    grid = np.arange(300, 2101) * 1e9
    air = MoistAir.from_relative_humidity(70.84)
    elapsed, _ = best_of(lambda: total_absorption_spectrum(grid, lines, air), 1)
    verdict = "within" if elapsed < SPECTRUM_BUDGET_S else "OVER"
    print(f"full spectrum, {args.lines} lines, active backend: {elapsed:.3f}s "
          f"({verdict} the {SPECTRUM_BUDGET_S:.0f} s budget)")


if __name__ == "__main__":
    main()
