#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times every kernel on a synthetic random graph and reports the speedup. Run
from the repository root:

    python3 benchmarks/bench_kernels.py [--n 20000] [--degree 8] [--repeat 5]
"""
import argparse
import random
import time

import numpy as np

from kwaypart.kernels import BACKEND, _pure

try:
    from kwaypart.kernels import _speedups
except ImportError:
    _speedups = None


def make_graph(rng, n, degree):
    """Random symmetric CSR graph with roughly n*degree arcs."""
    adj = [set() for _ in range(n)]
    for v in range(1, n):
        u = rng.randrange(v)
        adj[u].add(v)
        adj[v].add(u)
    for _ in range(n * degree // 2):
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    xadj = np.zeros(n + 1, dtype=np.int64)
    adjncy = []
    for v in range(n):
        nbrs = sorted(adj[v])
        adjncy.extend(nbrs)
        xadj[v + 1] = len(adjncy)
    adjncy = np.asarray(adjncy, dtype=np.int64)
    adjwgt = np.ones(len(adjncy), dtype=np.int64)
    vwgt = np.ones(n, dtype=np.int64)
    return xadj, adjncy, adjwgt, vwgt


def best_of(fn, repeat):
    best = None
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=20000,
                        help="number of nodes (default: 20000)")
    parser.add_argument("--degree", type=int, default=8,
                        help="approximate average degree (default: 8)")
    parser.add_argument("--repeat", type=int, default=5,
                        help="repetitions per measurement (default: 5)")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    if _speedups is None:
        print("compiled backend unavailable; only the pure backend will run")
    print(f"active package backend: {BACKEND}")

    rng = random.Random(args.seed)
    xadj, adjncy, adjwgt, vwgt = make_graph(rng, args.n, args.degree)
    n = args.n
    k = 8
    part = np.asarray([rng.randrange(k) for _ in range(n)], dtype=np.int64)
    cluster_of = part.copy()
    order = np.arange(n, dtype=np.int64)

    def lp_args():
        return (xadj, adjncy, adjwgt, vwgt, part.copy(),
                np.bincount(part, weights=vwgt, minlength=k)
                .astype(np.int64), order, n, 42, None)

    cases = [
        ("edge_cut", lambda m: m.edge_cut(xadj, adjncy, adjwgt, part)),
        ("comm_volume", lambda m: m.comm_volume(xadj, adjncy, part, k)),
        ("boundary_mask", lambda m: m.boundary_mask(xadj, adjncy, part)),
        ("contract_csr", lambda m: m.contract_csr(xadj, adjncy, adjwgt,
                                                  vwgt, cluster_of, k)),
        ("lp_sweep", lambda m: m.lp_sweep(*lp_args())),
    ]

    arcs = len(adjncy)
    print(f"graph: n={n} arcs={arcs}\n")
    header = f"{'kernel':<14} {'pure (ms)':>10} {'compiled (ms)':>14} " \
             f"{'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, fn in cases:
        t_pure, r_pure = best_of(lambda: fn(_pure), args.repeat)
        if _speedups is None:
            print(f"{name:<14} {t_pure * 1e3:>10.2f} {'-':>14} {'-':>8}")
            continue
        t_fast, r_fast = best_of(lambda: fn(_speedups), args.repeat)
        if name in ("edge_cut",):
            assert r_pure == r_fast, name
        print(f"{name:<14} {t_pure * 1e3:>10.2f} {t_fast * 1e3:>14.2f} "
              f"{t_pure / t_fast:>7.1f}x")


if __name__ == "__main__":
    main()
