"""Benchmark the compiled edit-distance kernel against the pure-Python fallback.

Usage: python3 benchmarks/bench_editdist.py [--pairs N] [--max-len N] [--seed S]
"""

from __future__ import annotations

import argparse
import random
import statistics
import time

from pmnharvest import KERNEL
from pmnharvest._editdist_py import levenshtein as python_kernel

try:
    from pmnharvest._editdist import levenshtein as cython_kernel
except ImportError:
    cython_kernel = None


def make_pairs(n: int, max_len: int, seed: int) -> list[tuple[str, str]]:
    rng = random.Random(seed)
    alphabet = "abcdefghijklmnopqrstuvwxyz -,0123456789"
    word = lambda: "".join(rng.choices(alphabet, k=rng.randint(0, max_len)))
    return [(word(), word()) for _ in range(n)]


def bench(fn, pairs, repeats=5) -> float:
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        for a, b in pairs:
            fn(a, b)
        times.append(time.perf_counter() - start)
    return min(times)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pairs", type=int, default=5000)
    parser.add_argument("--max-len", type=int, default=40)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    pairs = make_pairs(args.pairs, args.max_len, args.seed)
    print(f"active kernel at import: {KERNEL}")
    print(f"{args.pairs} pairs, lengths 0-{args.max_len}, best of 5 runs\n")

    py_time = bench(python_kernel, pairs)
    print(f"pure Python : {py_time:.4f}s  ({args.pairs / py_time:,.0f} pairs/s)")

    if cython_kernel is None:
        print("compiled    : not built (install with the C toolchain available)")
        return

    cy_time = bench(cython_kernel, pairs)
    print(f"compiled    : {cy_time:.4f}s  ({args.pairs / cy_time:,.0f} pairs/s)")
    print(f"speedup     : {py_time / cy_time:.1f}x")

    mismatches = sum(1 for a, b in pairs if python_kernel(a, b) != cython_kernel(a, b))
    assert mismatches == 0, f"{mismatches} result mismatches between kernels"
    print("agreement   : identical results on all pairs")


if __name__ == "__main__":
    main()
