"""Time the numba kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

The first numba call of each kernel includes JIT compilation (or a cache
load) and is reported separately.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from hurwitz_lab import _accel
from hurwitz_lab.symmetric_group import symmetric_group


def workloads():
    g = symmetric_group(6)
    rng = np.random.default_rng(0)
    h = rng.integers(0, 3, size=len(g.elements)).astype(np.int64)
    c = rng.integers(0, 3, size=len(g.elements)).astype(np.int64)
    mats = np.sqrt(0.5) * (rng.normal(size=(4, 8192, 4, 4)) + 1j * rng.normal(size=(4, 8192, 4, 4)))
    single = np.ascontiguousarray(mats[0])
    return {
        "group_convolve S6": lambda: _accel.group_convolve(h, c, g.mul),
        "commutator_counts S6": lambda: _accel.commutator_counts(g.mul, g.inv),
        "square_counts S6": lambda: _accel.square_counts(g.mul),
        "chain_product 4x8192 N=4": lambda: _accel.chain_product(mats),
        "trace_powers 8192 N=4 m<=4": lambda: _accel.trace_powers(single, 4),
    }


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    backends = _accel.available_backends()
    jobs = workloads()
    print(f"{'kernel':32s}" + "".join(f"{b:>12s}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for name, fn in jobs.items():
        row = {}
        for b in backends:
            with _accel.use_backend(b):
                start = time.perf_counter()
                fn()
                first = time.perf_counter() - start
                row[b] = best_of(fn, args.repeat)
                if b == "numba":
                    row["first"] = first
        line = f"{name:32s}" + "".join(f"{row[b] * 1e3:10.2f}ms" for b in backends)
        if "numba" in row:
            line += f"{row['numpy'] / row['numba']:11.1f}x  (first call {row['first'] * 1e3:.0f}ms)"
        print(line)


if __name__ == "__main__":
    main()
