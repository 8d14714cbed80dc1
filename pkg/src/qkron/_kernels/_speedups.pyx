# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled modular linear-algebra kernels.

These are the hot inner loops of the whole suite: row reduction of dense
and sparse vectors over Z_p (62-bit primes, so products need 128-bit
intermediates), CSR mat-vec, and small dense mat-mul.  The pure-Python
twin lives in ``pure.py``; both expose the same API and are selected in
``qkron._kernels.__init__``.
"""

import numpy as np

cdef extern from *:
    """
    typedef unsigned __int128 qkron_u128;
    """
    # Declared as unsigned long long for Cython's benefit; the emitted C
    # uses the 128-bit typedef, which is what the arithmetic runs on.
    ctypedef unsigned long long u128 "qkron_u128"

ctypedef unsigned long long u64
ctypedef long long i64


cdef inline u64 mulmod(u64 a, u64 b, u64 p) nogil:
    return <u64>((<u128>a * <u128>b) % <u128>p)


def implementation():
    return "cython"


cdef class DenseEchelon:
    """Row-echelon accumulator over Z_p for dense vectors.

    The pivot of a row is its first nonzero column; stored rows are
    normalized to pivot coefficient 1.  Callers choose the column order so
    that "first" means whatever pivot convention they need.
    """

    cdef public u64 p
    cdef public Py_ssize_t ncols
    cdef list _rows
    cdef dict _pivot_to_row

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
        return np.asarray(self._rows[self._pivot_to_row[pivot]])

    cdef void _eliminate(self, u64[::1] v):
        cdef Py_ssize_t j, k, n = self.ncols
        cdef u64 c, p = self.p
        cdef u64[::1] r
        cdef object ri
        for j in range(n):
            if v[j] == 0:
                continue
            ri = self._pivot_to_row.get(j)
            if ri is None:
                continue
            r = self._rows[<Py_ssize_t>ri]
            c = p - v[j]
            for k in range(j, n):
                if r[k]:
                    v[k] = (v[k] + mulmod(c, r[k], p)) % p

    def reduce(self, row):
        """Return the remainder of ``row`` after elimination (not stored)."""
        arr = np.array(row, dtype=np.uint64)
        self._eliminate(arr)
        return arr

    def insert(self, row):
        """Reduce ``row`` and store the remainder; return its pivot or None."""
        arr = np.array(row, dtype=np.uint64)
        cdef u64[::1] v = arr
        self._eliminate(v)
        cdef Py_ssize_t j, k, piv = -1
        for j in range(self.ncols):
            if v[j]:
                piv = j
                break
        if piv < 0:
            return None
        cdef u64 inv = pow(int(v[piv]), -1, int(self.p))
        cdef u64 p = self.p
        for k in range(piv, self.ncols):
            if v[k]:
                v[k] = mulmod(v[k], inv, p)
        self._pivot_to_row[piv] = len(self._rows)
        self._rows.append(arr)
        return piv


cdef class SparseEchelon:
    """Row-echelon accumulator over Z_p for sparse vectors.

    Rows are (sorted column index array, value array) pairs; pivot is the
    smallest column index.  Used for the big graded-slice eliminations.
    """

    cdef public u64 p
    cdef dict _rows   # pivot -> (np.int64[:], np.uint64[:])

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
        cdef Py_ssize_t total = 0
        for idx, _ in self._rows.values():
            total += len(idx)
        return total

    def _axpy_merge(self, i64[::1] ai, u64[::1] av, u64 c, i64[::1] bi, u64[::1] bv):
        """Return a + c*b as (idx, val) arrays, dropping zeros (a, b sorted)."""
        cdef Py_ssize_t na = ai.shape[0], nb = bi.shape[0]
        out_i = np.empty(na + nb, dtype=np.int64)
        out_v = np.empty(na + nb, dtype=np.uint64)
        cdef i64[::1] oi = out_i
        cdef u64[::1] ov = out_v
        cdef Py_ssize_t ia = 0, ib = 0, k = 0
        cdef u64 p = self.p, s
        while ia < na and ib < nb:
            if ai[ia] < bi[ib]:
                oi[k] = ai[ia]; ov[k] = av[ia]; ia += 1; k += 1
            elif ai[ia] > bi[ib]:
                s = mulmod(c, bv[ib], p)
                if s:
                    oi[k] = bi[ib]; ov[k] = s; k += 1
                ib += 1
            else:
                s = (av[ia] + mulmod(c, bv[ib], p)) % p
                if s:
                    oi[k] = ai[ia]; ov[k] = s; k += 1
                ia += 1; ib += 1
        while ia < na:
            oi[k] = ai[ia]; ov[k] = av[ia]; ia += 1; k += 1
        while ib < nb:
            s = mulmod(c, bv[ib], p)
            if s:
                oi[k] = bi[ib]; ov[k] = s; k += 1
            ib += 1
        return out_i[:k].copy(), out_v[:k].copy()

    def _normalize(self, idx, val):
        cdef u64[::1] v = val
        cdef u64 inv = pow(int(v[0]), -1, int(self.p))
        cdef u64 p = self.p
        cdef Py_ssize_t k
        for k in range(v.shape[0]):
            v[k] = mulmod(v[k], inv, p)
        return idx, val

    def reduce(self, cols, vals):
        """Remainder of a sparse vector after full elimination."""
        idx = np.ascontiguousarray(cols, dtype=np.int64)
        val = np.ascontiguousarray(vals, dtype=np.uint64)
        cdef u64 p = self.p
        while idx.shape[0]:
            row = self._rows.get(int(idx[0]))
            if row is None:
                break
            c = p - val[0]
            idx, val = self._axpy_merge(idx, val, c, row[0], row[1])
        return idx, val

    def reduce_tail(self, cols, vals):
        """Like reduce, but also eliminates non-leading reducible columns."""
        idx, val = self.reduce(cols, vals)
        cdef Py_ssize_t j = 1
        cdef u64 p = self.p
        while j < idx.shape[0]:
            row = self._rows.get(int(idx[j]))
            if row is None:
                j += 1
                continue
            c = p - val[j]
            idx, val = self._axpy_merge(idx, val, c, row[0], row[1])
        return idx, val

    def insert(self, cols, vals):
        """Insert a sparse vector; returns its pivot column or None."""
        idx, val = self.reduce(cols, vals)
        if not idx.shape[0]:
            return None
        idx, val = self._normalize(idx, val)
        piv = int(idx[0])
        self._rows[piv] = (idx, val)
        return piv


def spmv_csr(indptr, indices, data, x, p):
    """y = A @ x over Z_p with A in CSR form."""
    cdef i64[::1] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef i64[::1] ix = np.ascontiguousarray(indices, dtype=np.int64)
    cdef u64[::1] dv = np.ascontiguousarray(data, dtype=np.uint64)
    cdef u64[::1] xv = np.ascontiguousarray(x, dtype=np.uint64)
    cdef u64 pp = p
    cdef Py_ssize_t n = ip.shape[0] - 1, i, j
    out = np.zeros(n, dtype=np.uint64)
    cdef u64[::1] y = out
    cdef u128 acc
    with nogil:
        for i in range(n):
            acc = 0
            for j in range(ip[i], ip[i + 1]):
                acc += <u128>dv[j] * <u128>xv[ix[j]]
                if (j & 15) == 15:
                    acc %= pp
            y[i] = <u64>(acc % pp)
    return out


def gemm_mod(a, b, p):
    """Dense C = A @ B over Z_p (uint64 inputs, shapes (m,k),(k,n))."""
    A = np.ascontiguousarray(a, dtype=np.uint64)
    B = np.ascontiguousarray(b, dtype=np.uint64)
    cdef u64[:, ::1] av = A
    cdef u64[:, ::1] bv = B
    cdef Py_ssize_t m = av.shape[0], k = av.shape[1], n = bv.shape[1]
    out = np.zeros((m, n), dtype=np.uint64)
    cdef u64[:, ::1] cv = out
    cdef u64 pp = p
    cdef Py_ssize_t i, j, l
    cdef u128 acc
    with nogil:
        for i in range(m):
            for j in range(n):
                acc = 0
                for l in range(k):
                    acc += <u128>av[i, l] * <u128>bv[l, j]
                    if (l & 15) == 15:
                        acc %= pp
                cv[i, j] = <u64>(acc % pp)
    return out
