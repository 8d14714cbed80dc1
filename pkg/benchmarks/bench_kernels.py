"""Benchmark: compiled kernels vs the pure-Python fallback.

Runs the three hot loops (dense echelon insertion, sparse echelon
elimination, CSR mat-vec) on synthetic workloads shaped like the real
ones (62-bit prime, a few hundred dense columns, tens of thousands of
sparse columns), on both implementations.

    python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import random
import time

from qkron._kernels import load

P = 2305843009213693967


def bench_dense(impl, nrows, ncols, seed=1):
    rng = random.Random(seed)
    rows = [[rng.randrange(P) for _ in range(ncols)] for _ in range(nrows)]
    ech = impl.DenseEchelon(ncols, P)
    t0 = time.perf_counter()
    for row in rows:
        ech.insert(row)
    return time.perf_counter() - t0, ech.rank


def bench_sparse(impl, nrows, ncols, nnz, seed=2):
    rng = random.Random(seed)
    rows = []
    for _ in range(nrows):
        cols = sorted(rng.sample(range(ncols), nnz))
        rows.append((cols, [rng.randrange(1, P) for _ in cols]))
    ech = impl.SparseEchelon(P)
    t0 = time.perf_counter()
    for cols, vals in rows:
        ech.insert(cols, vals)
    return time.perf_counter() - t0, ech.rank


def bench_spmv(impl, n, nnz_per_row, repeats, seed=3):
    rng = random.Random(seed)
    indptr, indices, data = [0], [], []
    for _ in range(n):
        for c in sorted(rng.sample(range(n), nnz_per_row)):
            indices.append(c)
            data.append(rng.randrange(1, P))
        indptr.append(len(indices))
    x = [rng.randrange(P) for _ in range(n)]
    t0 = time.perf_counter()
    for _ in range(repeats):
        x = impl.spmv_csr(indptr, indices, data, x, P)
    return time.perf_counter() - t0


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true",
                        help="smaller workloads")
    args = parser.parse_args()
    scale = 4 if args.quick else 1
    workloads = [
        ("dense echelon", bench_dense,
         dict(nrows=400 // scale, ncols=600 // scale)),
        ("sparse echelon", bench_sparse,
         dict(nrows=4000 // scale, ncols=20000 // scale, nnz=16)),
        ("csr mat-vec", bench_spmv,
         dict(n=600 // scale, nnz_per_row=16, repeats=200 // scale)),
    ]
    impls = [("cython", None), ("pure", None)]
    loaded = {}
    for name, _ in impls:
        try:
            loaded[name] = load(name)
        except ImportError:
            print(f"{name}: unavailable")
    print(f"{'workload':<16}" + "".join(f"{n:>12}" for n in loaded) + "   speedup")
    for label, fn, kw in workloads:
        times = {}
        for name, impl in loaded.items():
            result = fn(impl, **kw)
            times[name] = result[0] if isinstance(result, tuple) else result
        cols = "".join(f"{times[n]:>11.3f}s" for n in loaded)
        speed = (f"{times['pure'] / times['cython']:>9.1f}x"
                 if {"pure", "cython"} <= set(times) else "")
        print(f"{label:<16}{cols}{speed}")


if __name__ == "__main__":
    main()
