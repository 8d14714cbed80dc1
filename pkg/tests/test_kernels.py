"""Compiled and pure kernels must agree exactly."""

import random

import pytest

from qkron._kernels import load

P = 2305843009213693967

pure = load("pure")
try:
    fast = load("cython")
except ImportError:
    fast = None

pair = pytest.mark.skipif(fast is None, reason="extension not built")


@pair
def test_dense_echelon_agree():
    rng = random.Random(5)
    rows = [[rng.randrange(P) for _ in range(40)] for _ in range(30)]
    # force some dependencies
    rows[10] = [(2 * a + 3 * b) % P for a, b in zip(rows[0], rows[1])]
    rows[20] = [0] * 40
    e1, e2 = pure.DenseEchelon(40, P), fast.DenseEchelon(40, P)
    for row in rows:
        assert e1.insert(list(row)) == e2.insert(list(row))
    assert e1.rank == e2.rank
    assert e1.pivots == e2.pivots
    probe = [rng.randrange(P) for _ in range(40)]
    assert list(e1.reduce(list(probe))) == list(e2.reduce(list(probe)))


@pair
def test_sparse_echelon_agree():
    rng = random.Random(9)
    e1, e2 = pure.SparseEchelon(P), fast.SparseEchelon(P)
    for _ in range(120):
        cols = sorted(rng.sample(range(500), 7))
        vals = [rng.randrange(1, P) for _ in cols]
        assert e1.insert(list(cols), list(vals)) == e2.insert(list(cols), list(vals))
    assert e1.rank == e2.rank
    cols = sorted(rng.sample(range(500), 9))
    vals = [rng.randrange(1, P) for _ in cols]
    i1, v1 = e1.reduce(list(cols), list(vals))
    i2, v2 = e2.reduce(list(cols), list(vals))
    assert list(i1) == list(i2) and list(v1) == list(v2)


@pair
def test_spmv_and_gemm_agree():
    rng = random.Random(17)
    indptr, indices, data = [0], [], []
    for _ in range(25):
        for c in sorted(rng.sample(range(25), 6)):
            indices.append(c)
            data.append(rng.randrange(1, P))
        indptr.append(len(indices))
    x = [rng.randrange(P) for _ in range(25)]
    assert list(pure.spmv_csr(indptr, indices, data, x, P)) == \
        list(fast.spmv_csr(indptr, indices, data, x, P))
    a = [[rng.randrange(P) for _ in range(12)] for _ in range(9)]
    b = [[rng.randrange(P) for _ in range(7)] for _ in range(12)]
    assert pure.gemm_mod(a, b, P).tolist() == fast.gemm_mod(a, b, P).tolist()


def test_dense_rank_known():
    e = pure.DenseEchelon(3, 7)
    assert e.insert([1, 2, 3]) == 0
    assert e.insert([2, 4, 6]) is None
    assert e.insert([0, 1, 1]) == 1
    assert e.rank == 2


def test_sparse_membership():
    e = pure.SparseEchelon(101)
    e.insert([0, 2], [1, 5])
    e.insert([1, 3], [2, 7])
    idx, _ = e.reduce([0, 1, 2, 3], [3, 4, 15, 14])
    assert len(idx) == 0  # 3*r1 + 2*r2
