"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Both modules are imported directly, so the environment switch is not
needed.  Each row reports the best of ``--repeat`` runs.
"""
import argparse
import random
import time

import numpy as np

from resolvekit import _fallback
from resolvekit.graph import Graph

try:
    from resolvekit import _kernels
except ImportError:
    _kernels = None


def random_connected(rng, n, p):
    edges = {(i, rng.randrange(i)) for i in range(1, n)}  # spanning tree
    edges |= {(u, v) for u in range(n) for v in range(u) if rng.random() < p}
    return Graph(n, edges)


def csr(g):
    indptr = np.zeros(g.n + 1, dtype=np.int64)
    for u in range(g.n):
        indptr[u + 1] = indptr[u] + len(g.adj[u])
    indices = np.array([v for u in range(g.n) for v in g.adj[u]], dtype=np.int64)
    return indptr, indices


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases(rng):
    big = random_connected(rng, 400, 0.01)
    mid = random_connected(rng, 18, 0.2)
    indptr, indices = csr(big)
    yield "bfs_all_pairs n=400", lambda k: k.bfs_all_pairs(big.n, indptr, indices)
    d = _fallback.bfs_all_pairs(mid.n, *csr(mid))
    everyone = list(range(mid.n))
    for name, kind in (("md", _fallback.MD), ("gs", _fallback.GS), ("smd", _fallback.SMD)):
        # one below the optimum, so the search scans every subset of that size
        size = 0
        while _fallback.first_subset(d, kind, [], everyone, size + 1) is None:
            size += 1
        if size == 0:
            continue
        yield (f"first_subset {name} n=18 size={size}",
               lambda k, kind=kind, size=size: k.first_subset(d, kind, [], everyone, size))
    S = list(range(0, mid.n, 2))
    yield "check_set md x2000", lambda k: [k.check_set(d, _fallback.MD, S) for _ in range(2000)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled kernels not built; only the fallback is timed")
    print(f"{'case':34} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, fn in cases(random.Random(args.seed)):
        t_py = best_of(lambda: fn(_fallback), args.repeat)
        if _kernels is None:
            print(f"{name:34} {t_py:10.4f} {'-':>10} {'-':>8}")
            continue
        t_cy = best_of(lambda: fn(_kernels), args.repeat)
        print(f"{name:34} {t_py:10.4f} {t_cy:10.4f} {t_py / t_cy:7.1f}x")


if __name__ == "__main__":
    main()
