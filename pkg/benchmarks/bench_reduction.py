"""Benchmark the numba int64 reduction kernels against the exact
object-array fallback, on matrices shaped like the nerve differentials the
library actually produces (sparse, small entries), plus one end-to-end
cohomology comparison.

Run:  python benchmarks/bench_reduction.py [--rows 300] [--cols 400]
The POSETCOH_BACKEND environment variable is overridden internally; both
paths run regardless of it.
"""

import argparse
import random
import time

import numpy as np

from posetcoh import _backend, _reduction
from posetcoh.abelian import IntMatrix


def random_sparse(rng, rows, cols, density=0.03):
    m = np.zeros((rows, cols), dtype=np.int64)
    for i in range(rows):
        for j in range(cols):
            if rng.random() < density:
                m[i, j] = rng.choice((-1, 1, 1, -1, 2, -2))
    return m


def time_python(mat, op):
    h = mat.astype(object)
    u = np.array(np.eye(h.shape[0], dtype=np.int64), dtype=object)
    start = time.perf_counter()
    if op == "hnf":
        _reduction.hnf_inplace(h, u)
    else:
        v = np.array(np.eye(h.shape[1], dtype=np.int64), dtype=object)
        _reduction.snf_inplace(h, u, v)
    return time.perf_counter() - start, h


def time_numba(kernels, mat, op):
    h = mat.copy()
    u = np.eye(h.shape[0], dtype=np.int64)
    start = time.perf_counter()
    if op == "hnf":
        status = kernels.hnf_i64(h, u)
    else:
        v = np.eye(h.shape[1], dtype=np.int64)
        status = kernels.snf_i64(h, u, v)
    elapsed = time.perf_counter() - start
    if status != 0:
        raise RuntimeError("kernel bailed out on benchmark input")
    return elapsed, h


def bench_kernels(args):
    kernels = _backend.kernels()
    rng = random.Random(args.seed)
    mat = random_sparse(rng, args.rows, args.cols, args.density)
    print(f"matrix {args.rows}x{args.cols}, density {args.density}")
    if kernels is not None:
        # warm the JIT before timing
        time_numba(kernels, random_sparse(rng, 8, 8, 0.3), "hnf")
        time_numba(kernels, random_sparse(rng, 8, 8, 0.3), "snf")
    for op in ("hnf", "snf"):
        t_py, h_py = time_python(mat, op)
        line = f"  {op}: python {t_py:8.3f}s"
        if kernels is not None:
            t_nb, h_nb = time_numba(kernels, mat, op)
            same = (h_py == h_nb.astype(object)).all()
            line += f"   numba {t_nb:8.3f}s   speedup {t_py / t_nb:6.1f}x"
            line += "   outputs match" if same else "   OUTPUT MISMATCH"
        else:
            line += "   (numba unavailable)"
        print(line)


def bench_end_to_end():
    from posetcoh.builders import bruhat_poset
    from posetcoh.cellular import compare
    from posetcoh.presheaf import constant

    order = bruhat_poset(4)
    sheaf = constant(order.poset, 1)
    backend = _backend.backend_in_use()
    start = time.perf_counter()
    rep = compare(order.poset, sheaf)
    elapsed = time.perf_counter() - start
    print(
        f"  bruhat-S4 compare ({backend} backend): {elapsed:.2f}s,"
        f" cellular={rep.cellular}, isomorphic={rep.all_isomorphic}"
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rows", type=int, default=300)
    parser.add_argument("--cols", type=int, default=400)
    parser.add_argument("--density", type=float, default=0.03)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument(
        "--skip-end-to-end", action="store_true",
        help="only benchmark the raw kernels",
    )
    args = parser.parse_args()
    print(f"backend selected by environment: {_backend.backend_in_use()}")
    bench_kernels(args)
    if not args.skip_end_to_end:
        bench_end_to_end()


if __name__ == "__main__":
    main()
