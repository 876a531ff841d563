#!/usr/bin/env python3
"""Benchmark the pure-Python bitset kernels against the compiled ones.

Generates a batch of random labeled graphs and times the two dominant
kernels on each backend: the definitional word-table construction and the
all-subset-pairs distributivity scan (the inner loop of the weak
left-resolving oracle).  Outputs agree bit for bit; the script asserts it.

Usage: python benchmarks/bench_kernels.py [--graphs N] [--seed S]
"""

from __future__ import annotations

import argparse
import random
import time

from labgraphs._kernels import pure

try:
    from labgraphs._kernels import _ckern as compiled
except ImportError:
    compiled = None


def random_instances(n: int, seed: int):
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        nv = rng.randint(2, 6)
        nletters = rng.randint(1, 3)
        ne = rng.randint(2, 12)
        adj = [[] for _ in range(nv)]
        for _ in range(ne):
            adj[rng.randrange(nv)].append((rng.randrange(nletters),
                                           rng.randrange(nv)))
        out.append((nv, adj))
    return out


def run(backend, instances, max_word_len):
    started = time.perf_counter()
    results = []
    for nv, adj in instances:
        tables = backend.path_word_tables(nv, adj, max_word_len)
        rows = [tables[w] for w in sorted(tables)]
        results.append(backend.distributivity_witness(nv, rows))
    return time.perf_counter() - started, results


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--graphs", type=int, default=300)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-word-len", type=int, default=4)
    args = parser.parse_args()

    instances = random_instances(args.graphs, args.seed)
    pure_time, pure_results = run(pure, instances, args.max_word_len)
    print(f"{'backend':<10} {'graphs':>7} {'seconds':>9} {'per graph':>11}")
    print(f"{'pure':<10} {args.graphs:>7} {pure_time:>9.3f} "
          f"{pure_time / args.graphs * 1e3:>9.2f}ms")
    if compiled is None:
        print("compiled kernels not built; install with a C compiler to compare")
        return 0
    c_time, c_results = run(compiled, instances, args.max_word_len)
    print(f"{'compiled':<10} {args.graphs:>7} {c_time:>9.3f} "
          f"{c_time / args.graphs * 1e3:>9.2f}ms")
    assert pure_results == c_results, "backends disagree"
    print(f"speedup: {pure_time / c_time:.1f}x (results identical)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
