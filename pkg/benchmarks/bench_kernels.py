"""Compare the compiled and pure-Python argument-continuation kernels.

    python3 benchmarks/bench_kernels.py [--pairs 2000] [--repeat 3]
"""

import argparse
import time

import numpy as np

from tightlie.domain_geom import kernels, parse_domain, random_interior_point, random_shilov_point
from tightlie.domain_geom.domains import pair_matrix
from tightlie.domain_geom.search import sup_search

KINDS = ["disk", "polydisk:3", "ball:2,2", "siegel:3", "ball:4,4"]


def batch(kind, count, rng):
    D = parse_domain(kind)
    pick = (random_interior_point, random_shilov_point)
    return np.stack([pair_matrix(D, pick[i % 2](D, rng), pick[(i + 1) % 2](D, rng)) for i in range(count)])


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pairs", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled kernels are not built; only the Python backend is available")
    rng = np.random.default_rng(args.seed)
    print(f"{'domain':<12}{'backend':<9}{'pairs/s':>12}{'speedup':>9}{'max diff':>11}")
    for kind in KINDS:
        As = batch(kind, args.pairs, rng)
        res, rate = {}, {}
        for b in backends:
            res[b] = kernels.arg_continuation_batch(As, b)
            rate[b] = len(As) / best_of(lambda: kernels.arg_continuation_batch(As, b), args.repeat)
        diff = float(np.max(np.abs(res["python"] - res.get("cython", res["python"]))))
        for b in backends:
            print(f"{kind:<12}{b:<9}{rate[b]:>12.0f}{rate[b] / rate['python']:>8.1f}x{diff:>11.1e}")
    # one end-to-end optimizer run per backend
    D = parse_domain("disk")
    for b in backends:
        t = best_of(lambda: sup_search(D, restarts=4, iters=300, seed=args.seed, backend=b, threads=1), 1)
        print(f"sup_search disk, 4 restarts, {b}: {t:.2f} s")


if __name__ == "__main__":
    main()
