#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-NumPy fallbacks.

Usage:  python3 benchmarks/bench_kernels.py [--repeat N]

Prints one line per kernel with the mean wall time of each
implementation and the speedup factor, then a JSON summary.
"""

from __future__ import annotations

import argparse
import json
import time

import numpy as np

from qris._kernels import IMPLEMENTATION, fallback
from qris.qr.encoder import encode
from qris.qr.galois import _factor_products


def _time(fn, args, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=20)
    args = parser.parse_args()

    if IMPLEMENTATION != "compiled":
        raise SystemExit("compiled kernels are not available "
                         "(built without the extension, or QRIS_PURE set)")
    from qris._kernels import _core as compiled

    rng = np.random.default_rng(42)

    # Realistic workloads: a version-40 symbol for the grid kernels, a
    # long RS block, and a few thousand sorted rows for the split search.
    grid = encode("https://example.com/benchmark", rng_seed=0,
                  force_version=40).grid.copy()
    data = rng.integers(0, 256, 107, dtype=np.uint8)
    prod = _factor_products(30)
    image = rng.integers(0, 256, (1600, 1600), dtype=np.uint8)
    bounds = np.rint(np.linspace(0, 1600, 178)).astype(np.int64)
    values = np.sort(rng.normal(0, 1, 4000))
    grad = rng.normal(0, 1, 4000)
    hess = np.full(4000, 0.25)
    labels = rng.integers(0, 2, 4000).astype(np.float64)

    cases = [
        ("rs_remainder", (data, prod)),
        ("penalty_score", (grid,)),
        ("block_means", (image, bounds, bounds)),
        ("best_split_gh", (values, grad, hess, 1.0, 1.0)),
        ("best_split_impurity", (values, labels, 1, 0)),
    ]

    summary = {}
    for name, call_args in cases:
        t_compiled = _time(getattr(compiled, name), call_args, args.repeat)
        t_python = _time(getattr(fallback, name), call_args, args.repeat)
        summary[name] = {"compiled_us": round(t_compiled * 1e6, 2),
                         "python_us": round(t_python * 1e6, 2),
                         "speedup": round(t_python / t_compiled, 2)}
        print(f"{name:20s} compiled {t_compiled * 1e6:10.2f} us   "
              f"python {t_python * 1e6:10.2f} us   "
              f"speedup {t_python / t_compiled:6.2f}x")
    print(json.dumps(summary, sort_keys=True))


if __name__ == "__main__":
    main()
