"""Benchmark the compiled GF(2) kernels against the pure-Python fallback.

Usage: python3 benchmarks/bench_backends.py [--n 3] [--repeat 3]

Times three workloads per backend: matrix rank on random 8x8 batches, the
unipotent classifier on flag-coset members, and a full adapted-classes run
(enumeration + classification) for one cycle type.
"""

import argparse
import random
import time

from char2uni import _backend, _kernels_py
from char2uni.class_labels import CycleType
from char2uni.flags import build_flag_pair
from char2uni.harness import _coset_context, _full_images, _matrix_rows_from_images, adapted_classes


def timeit(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def collect_coset(n):
    pair = build_flag_pair(CycleType([n]), False)
    ctx = _coset_context(pair)
    mats = [_matrix_rows_from_images(ctx, ws) for ws in _full_images(ctx, ())]
    return mats, ctx.gram, ctx.nn


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=3, help="rank of the coset workload")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if "c" not in _backend.available():
        print("compiled kernels not built; timing the pure backend only")

    rng = random.Random(1)
    dim = 2 * args.n
    rank_batch = [
        [rng.randrange(1 << dim) for _ in range(dim)] for _ in range(20000)
    ]
    mats, gram, nn = collect_coset(args.n)
    print("workloads: %d rank calls (%dx%d), %d classify calls, "
          "one adapted-classes run for cycles [%d]"
          % (len(rank_batch), dim, dim, len(mats), args.n))

    results = {}
    for name in _backend.available():
        prev = _backend.use(name)
        try:
            kern = _backend
            t_rank = timeit(lambda: [kern.rank(rows, dim) for rows in rank_batch],
                            args.repeat)
            t_cls = timeit(lambda: [kern.classify_unipotent(g, gram, nn) for g in mats],
                           args.repeat)
            t_full = timeit(lambda: adapted_classes(CycleType([args.n]), "sp"),
                            args.repeat)
            results[name] = (t_rank, t_cls, t_full)
        finally:
            _backend.use(prev)

    header = "%-8s %12s %12s %12s" % ("backend", "rank", "classify", "full run")
    print(header)
    print("-" * len(header))
    for name, (t_rank, t_cls, t_full) in results.items():
        print("%-8s %11.3fs %11.3fs %11.3fs" % (name, t_rank, t_cls, t_full))
    if len(results) == 2:
        c, py = results["c"], results["py"]
        print("speedup (py/c): rank %.1fx, classify %.1fx, full run %.1fx"
              % (py[0] / c[0], py[1] / c[1], py[2] / c[2]))


if __name__ == "__main__":
    main()
