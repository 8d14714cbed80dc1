"""Coefficient-field plumbing and small exact linear algebra.

All algebra code in this package is generic over a *field object*: either
the exact field Q(q^(1/2)) or its specialization Z_p at a point (p, q0).
A field object carries the arithmetic, the distinguished values q and
q^(1/2), and conversion from exact coefficients.  Elements themselves are
plain values (RatFuncQ instances, or ints mod p).

The exact echelon/rank routines here are for the small exact computations
(Hecke algebras up to rank 5 or 6, the 36-dimensional tensor square at
rank 3).  The big modular eliminations go through qkron._kernels.
"""

from __future__ import annotations

from .coeffs import ModSpec, RatFuncQ

__all__ = ["ExactField", "ModField", "EXACT", "Echelon", "mat_mul", "mat_identity"]


class ExactField:
    """Arithmetic wrapper for RatFuncQ."""

    name = "exact"
    exact = True

    def __init__(self):
        self.zero = RatFuncQ.zero()
        self.one = RatFuncQ.one()
        self.q = RatFuncQ.q_power(2)
        self.qh = RatFuncQ.q_power(1)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def div(a, b):
        return a / b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        return RatFuncQ.one() / a

    @staticmethod
    def is_zero(a):
        return a.is_zero()

    @staticmethod
    def from_int(n):
        return RatFuncQ.from_int(n)

    @staticmethod
    def from_rat(r):
        return r


EXACT = ExactField()


class ModField:
    """Arithmetic in Z_p at an evaluation point for q."""

    name = "mod"
    exact = False

    def __init__(self, spec: ModSpec):
        self.spec = spec
        self.p = spec.prime
        self.zero = 0
        self.one = 1
        self.q = spec.qval % self.p
        self.qh = spec.sqrt_qval % self.p if spec.sqrt_qval is not None else None

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def div(self, a, b):
        return (a * pow(b, -1, self.p)) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    @staticmethod
    def is_zero(a):
        return a == 0

    def from_int(self, n):
        return n % self.p

    def from_rat(self, r):
        return r.specialize(self.spec)

    def __repr__(self):
        return f"ModField(p={self.p}, q={self.q})"


class Echelon:
    """Generic echelon structure over a field object.

    Vectors are dicts {key: coefficient}.  ``key_rank`` maps a key to its
    pivot priority: the pivot of a vector is its key of *minimal* rank, so
    callers encode "largest key wins" by ranking in descending key order.
    Stored rows are normalized to pivot coefficient one.  When ``track`` is
    set, each inserted row remembers its expansion over the inserted
    vectors, so dependencies come out as explicit linear combinations.
    """

    def __init__(self, field, key_rank, track=False):
        self.field = field
        self.key_rank = key_rank
        self.rows = {}
        self.track = track
        self.combos = {}
        self.n_inserted = 0

    @property
    def rank(self):
        return len(self.rows)

    def _pivot(self, vec):
        return min(vec, key=self.key_rank)

    def reduce(self, vec):
        """Return (remainder, combo) with vec = remainder + sum combo[i]*row_i."""
        f = self.field
        v = dict(vec)
        combo = {}
        while v:
            piv = self._pivot(v)
            row = self.rows.get(piv)
            if row is None:
                break
            c = v[piv]
            for k, rc in row.items():
                s = f.sub(v.get(k, f.zero), f.mul(c, rc))
                if f.is_zero(s):
                    v.pop(k, None)
                else:
                    v[k] = s
            if self.track:
                rowcombo = self.combos[piv]
                for i, rc in rowcombo.items():
                    s = f.add(combo.get(i, f.zero), f.mul(c, rc))
                    if f.is_zero(s):
                        combo.pop(i, None)
                    else:
                        combo[i] = s
        return v, combo

    def reduce_fully(self, vec):
        """Eliminate every reducible key, not just the leading one."""
        f = self.field
        v, combo = self.reduce(vec)
        keys = sorted(v, key=self.key_rank)
        i = 0
        while i < len(keys):
            k = keys[i]
            row = self.rows.get(k)
            if row is None or k not in v:
                i += 1
                continue
            c = v[k]
            for kk, rc in row.items():
                s = f.sub(v.get(kk, f.zero), f.mul(c, rc))
                if f.is_zero(s):
                    v.pop(kk, None)
                else:
                    v[kk] = s
            if self.track:
                for idx, rc in self.combos[k].items():
                    s = f.add(combo.get(idx, f.zero), f.mul(c, rc))
                    if f.is_zero(s):
                        combo.pop(idx, None)
                    else:
                        combo[idx] = s
            keys = sorted(set(keys) | set(v), key=self.key_rank)
            i += 1
        return v, combo

    def insert(self, vec):
        """Insert a vector.  Returns (pivot, combo): pivot is None when the
        vector was dependent, and combo expresses the vector over previously
        inserted ones (only when tracking)."""
        f = self.field
        v, combo = self.reduce(vec)
        idx = self.n_inserted
        self.n_inserted += 1
        if not v:
            return None, combo
        piv = self._pivot(v)
        inv = f.inv(v[piv])
        row = {k: f.mul(inv, c) for k, c in v.items()}
        self.rows[piv] = row
        if self.track:
            rowcombo = {i: f.neg(f.mul(inv, c)) for i, c in combo.items()}
            rowcombo[idx] = inv
            self.combos[piv] = rowcombo
        return piv, combo

    def contains(self, vec):
        rem, _ = self.reduce(vec)
        return not rem


def mat_identity(field, n):
    return [
        [field.one if i == j else field.zero for j in range(n)] for i in range(n)
    ]


def mat_mul(field, a, b):
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    zero = field.zero
    out = [[zero] * m for _ in range(n)]
    for i in range(n):
        arow = a[i]
        orow = out[i]
        for l in range(k):
            al = arow[l]
            if field.is_zero(al):
                continue
            brow = b[l]
            for j in range(m):
                if not field.is_zero(brow[j]):
                    orow[j] = field.add(orow[j], field.mul(al, brow[j]))
    return out
