#!/usr/bin/env python3
"""Benchmark the subset-scan kernel: numba @njit vs the numpy fallback.

The scan tests all 2^n subsets of a graph's vertex set for maximal
cliquehood; on the 24-vertex combined preset that is ~16.8M subsets and
is the hottest loop in the package. Usage:

    python3 benchmarks/bench_exhaustive.py [--preset combined24] [--iters 3]

Run with MODUGRAPH_NO_NUMBA=1 to confirm the dispatcher picks numpy.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from modugraph import exhaustive
from modugraph.graph import preset_graph


def time_fn(fn, masks, iters):
    times = []
    for _ in range(iters):
        t0 = time.perf_counter()
        result = fn(masks)
        times.append(time.perf_counter() - t0)
    return result, min(times)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--preset", default="combined24",
                        choices=("major12", "minor12", "combined24"))
    parser.add_argument("--iters", type=int, default=3)
    args = parser.parse_args()

    graph = preset_graph(args.preset)
    masks = exhaustive.adjacency_masks(graph.adjacency)
    print(f"preset {args.preset}: {graph.n} vertices, 2^{graph.n} subsets")
    print(f"dispatcher backend: {exhaustive.ACTIVE_BACKEND}")

    numpy_result, numpy_best = time_fn(exhaustive.scan_masks_numpy, masks, args.iters)
    print(f"numpy  fallback: {numpy_best * 1000:8.1f} ms   ({len(numpy_result)} maximal cliques)")

    if exhaustive._numba_scan is not None:
        t0 = time.perf_counter()
        exhaustive.scan_masks_numba(masks)  # includes JIT compile on cold cache
        warmup = time.perf_counter() - t0
        numba_result, numba_best = time_fn(exhaustive.scan_masks_numba, masks, args.iters)
        print(f"numba  kernel:   {numba_best * 1000:8.1f} ms   (warmup {warmup:.2f}s)")
        print(f"speedup: {numpy_best / numba_best:.1f}x")
        agree = np.array_equal(numpy_result, numba_result)
        print(f"agreement: {'identical results' if agree else 'MISMATCH'}")
        if not agree:
            raise SystemExit(1)
    else:
        print("numba  kernel:   unavailable (MODUGRAPH_NO_NUMBA set or numba missing)")


if __name__ == "__main__":
    main()
