"""Pure-Python twins of the compiled kernels.

Same API as ``_speedups``; used when the extension is unavailable or when
QKRON_PURE=1 is set.  Arbitrary-precision ints make overflow a non-issue,
at an order-of-magnitude (or worse) speed cost -- see benchmarks/.
"""

import numpy as np


def implementation():
    return "pure"


class DenseEchelon:
    """Row-echelon accumulator over Z_p for dense vectors (pivot = first
    nonzero column; stored rows have pivot coefficient 1)."""

    def __init__(self, ncols, p):
        self.ncols = ncols
        self.p = p
        self._rows = []
        self._pivot_to_row = {}

    @property
    def rank(self):
        return len(self._rows)

    @property
    def pivots(self):
        return sorted(self._pivot_to_row)

    def row(self, pivot):
        return np.array(self._rows[self._pivot_to_row[pivot]], dtype=np.uint64)

    def _eliminate(self, v):
        p = self.p
        for j in range(self.ncols):
            if not v[j]:
                continue
            ri = self._pivot_to_row.get(j)
            if ri is None:
                continue
            r = self._rows[ri]
            c = p - v[j]
            for k in range(j, self.ncols):
                if r[k]:
                    v[k] = (v[k] + c * r[k]) % p
        return v

    def reduce(self, row):
        v = [int(x) % self.p for x in row]
        return np.array(self._eliminate(v), dtype=np.uint64)

    def insert(self, row):
        v = self._eliminate([int(x) % self.p for x in row])
        piv = next((j for j, x in enumerate(v) if x), None)
        if piv is None:
            return None
        inv = pow(v[piv], -1, self.p)
        v = [(x * inv) % self.p for x in v]
        self._pivot_to_row[piv] = len(self._rows)
        self._rows.append(v)
        return piv


class SparseEchelon:
    """Row-echelon accumulator over Z_p for sparse vectors (rows are
    (sorted index array, value array); pivot = smallest index)."""

    def __init__(self, p):
        self.p = p
        self._rows = {}

    @property
    def rank(self):
        return len(self._rows)

    @property
    def pivots(self):
        return sorted(self._rows)

    def nnz(self):
        return sum(len(idx) for idx, _ in self._rows.values())

    def _axpy_merge(self, ai, av, c, bi, bv):
        p = self.p
        oi, ov = [], []
        ia = ib = 0
        na, nb = len(ai), len(bi)
        while ia < na and ib < nb:
            if ai[ia] < bi[ib]:
                oi.append(ai[ia]); ov.append(av[ia]); ia += 1
            elif ai[ia] > bi[ib]:
                s = (c * bv[ib]) % p
                if s:
                    oi.append(bi[ib]); ov.append(s)
                ib += 1
            else:
                s = (av[ia] + c * bv[ib]) % p
                if s:
                    oi.append(ai[ia]); ov.append(s)
                ia += 1; ib += 1
        while ia < na:
            oi.append(ai[ia]); ov.append(av[ia]); ia += 1
        while ib < nb:
            s = (c * bv[ib]) % p
            if s:
                oi.append(bi[ib]); ov.append(s)
            ib += 1
        return oi, ov

    def reduce(self, cols, vals):
        p = self.p
        idx = [int(c) for c in cols]
        val = [int(v) % p for v in vals]
        while idx:
            row = self._rows.get(idx[0])
            if row is None:
                break
            idx, val = self._axpy_merge(idx, val, p - val[0], row[0], row[1])
        return np.array(idx, dtype=np.int64), np.array(val, dtype=np.uint64)

    def reduce_tail(self, cols, vals):
        idx, val = self.reduce(cols, vals)
        idx, val = list(idx), [int(v) for v in val]
        j = 1
        while j < len(idx):
            row = self._rows.get(int(idx[j]))
            if row is None:
                j += 1
                continue
            idx, val = self._axpy_merge(idx, val, self.p - val[j], row[0], row[1])
        return np.array(idx, dtype=np.int64), np.array(val, dtype=np.uint64)

    def insert(self, cols, vals):
        idx, val = self.reduce(cols, vals)
        idx, val = [int(c) for c in idx], [int(v) for v in val]
        if not idx:
            return None
        inv = pow(val[0], -1, self.p)
        val = [(v * inv) % self.p for v in val]
        self._rows[idx[0]] = (idx, val)
        return idx[0]


def spmv_csr(indptr, indices, data, x, p):
    xs = [int(v) for v in x]
    out = []
    for i in range(len(indptr) - 1):
        acc = 0
        for j in range(int(indptr[i]), int(indptr[i + 1])):
            acc += int(data[j]) * xs[int(indices[j])]
        out.append(acc % p)
    return np.array(out, dtype=np.uint64)


def gemm_mod(a, b, p):
    A = [[int(x) for x in row] for row in a]
    B = [[int(x) for x in row] for row in b]
    n = len(B[0]) if B else 0
    out = [[0] * n for _ in A]
    for i, arow in enumerate(A):
        for l, al in enumerate(arow):
            if al:
                brow = B[l]
                orow = out[i]
                for j in range(n):
                    orow[j] += al * brow[j]
        out[i] = [v % p for v in out[i]]
    return np.array(out, dtype=np.uint64)
