"""The Hecke algebra H_r(q) of the symmetric group S_r.

Generators T_1, ..., T_{r-1} satisfy

    T_i T_j = T_j T_i           (|i - j| > 1)
    T_i T_{i+1} T_i = T_{i+1} T_i T_{i+1}
    T_i^2 = (q - 1) T_i + q

so each T_i has eigenvalues q and -1.  Elements are sparse coefficient
maps over the permutation basis {T_w}.  On top of the T-basis arithmetic
this module provides:

  * the idempotent generators p_i = (T_i + 1)/(q + 1), their complements
    q_i = 1 - p_i, the reflection-like f_i, and the rescaled
    ptilde_i / qtilde_i that carry a q^(1/2);
  * the bar involution iota (q -> 1/q, T_i -> T_i^{-1}) and the
    K-involution theta (T_i -> -T_i + q - 1);
  * the Kazhdan-Lusztig basis, normalized so that the degree-one element
    is C_{s_i} = -qtilde_i = q^(-1/2) (T_i - q);
  * the action on V^{tensor r} by quantum (anti)symmetrizers, under which
    p_i acts as the positive spectral projector on factors (i, i+1).

Permutations are tuples in one-line notation (1-based images).  The
serialization order on S_r is lexicographic on minimal reduced words:
id < s1 < s1 s2 < s1 s2 s1 < s2 < s2 s1 for r = 3.
"""

from __future__ import annotations

from functools import lru_cache

from .coeffs import RatFuncQ
from .linalg import EXACT, Echelon, mat_identity, mat_mul

__all__ = [
    "PermTable",
    "perm_table",
    "HeckeElt",
    "derived_generator",
    "involution",
    "kl_basis",
    "kl_cprime_basis",
    "RMatrix",
    "rmatrix",
    "act_on_tensor",
    "tensor_generator_images",
]


# ---------------------------------------------------------------------------
# Permutations of {1..r}
# ---------------------------------------------------------------------------


class PermTable:
    """Cached combinatorics of S_r: multiplication by adjacent
    transpositions, lengths, minimal reduced words, and the word order."""

    def __init__(self, r):
        self.r = r
        idperm = tuple(range(1, r + 1))
        self.perms = [idperm]
        self.index = {idperm: 0}
        self.min_word = {idperm: ()}
        # BFS in (length, lex) order makes each first-found word the
        # lexicographically minimal reduced word.
        frontier = [idperm]
        while frontier:
            nxt = []
            for w in frontier:
                base = self.min_word[w]
                for i in range(1, r):
                    ws = self._apply_right(w, i)
                    if ws not in self.index:
                        self.index[ws] = len(self.perms)
                        self.perms.append(ws)
                        self.min_word[ws] = base + (i,)
                        nxt.append(ws)
            frontier = nxt
        self.length = [self._inversions(w) for w in self.perms]
        self.right_mul = [
            [self.index[self._apply_right(w, i)] for i in range(1, r)]
            for w in self.perms
        ]
        # serialization order: lexicographic on minimal reduced words
        self.word_order = sorted(
            range(len(self.perms)), key=lambda i: self.min_word[self.perms[i]]
        )
        self.word_rank = [0] * len(self.perms)
        for pos, i in enumerate(self.word_order):
            self.word_rank[i] = pos

    @staticmethod
    def _apply_right(w, i):
        v = list(w)
        v[i - 1], v[i] = v[i], v[i - 1]
        return tuple(v)

    @staticmethod
    def _inversions(w):
        return sum(
            1 for a in range(len(w)) for b in range(a + 1, len(w)) if w[a] > w[b]
        )

    def longer_right(self, w, i):
        """True iff l(w s_i) > l(w)."""
        return w[i - 1] < w[i]

    def word_of(self, w):
        return self.min_word[w]


@lru_cache(maxsize=None)
def perm_table(r):
    return PermTable(r)


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------


class HeckeElt:
    """Sparse element of H_r over a coefficient field object."""

    __slots__ = ("r", "coeffs", "field")

    def __init__(self, r, coeffs=None, field=EXACT):
        self.r = r
        self.field = field
        self.coeffs = {}
        if coeffs:
            for w, c in coeffs.items():
                if not field.is_zero(c):
                    self.coeffs[w] = c

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, r, field=EXACT):
        return cls(r, {}, field)

    @classmethod
    def one(cls, r, field=EXACT):
        return cls(r, {tuple(range(1, r + 1)): field.one}, field)

    @classmethod
    def tgen(cls, r, i, field=EXACT):
        if not 1 <= i <= r - 1:
            raise IndexError(f"generator index {i} out of range for rank {r}")
        w = PermTable._apply_right(tuple(range(1, r + 1)), i)
        return cls(r, {w: field.one}, field)

    @classmethod
    def t_word(cls, r, word, field=EXACT):
        out = cls.one(r, field)
        for i in word:
            out = out.right_mul_gen(i)
        return out

    # -- basics ---------------------------------------------------------------

    def _check(self, other):
        if self.r != other.r:
            raise ValueError(f"rank mismatch: {self.r} vs {other.r}")
        if self.field is not other.field:
            raise ValueError("coefficient field mismatch")

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, HeckeElt):
            return NotImplemented
        if self.r != other.r:
            return False
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("HeckeElt is unhashable")

    def __add__(self, other):
        self._check(other)
        f = self.field
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            s = f.add(out.get(w, f.zero), c)
            if f.is_zero(s):
                out.pop(w, None)
            else:
                out[w] = s
        return HeckeElt(self.r, out, f)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        f = self.field
        return HeckeElt(self.r, {w: f.neg(c) for w, c in self.coeffs.items()}, f)

    def scale(self, c):
        f = self.field
        if f.is_zero(c):
            return HeckeElt.zero(self.r, f)
        return HeckeElt(
            self.r, {w: f.mul(c, v) for w, v in self.coeffs.items()}, f
        )

    def right_mul_gen(self, i):
        """Multiply by T_{s_i} on the right via the length case split."""
        tab = perm_table(self.r)
        f = self.field
        q = f.q
        qm1 = f.sub(q, f.one)
        out = {}

        def bump(w, c):
            s = f.add(out.get(w, f.zero), c)
            if f.is_zero(s):
                out.pop(w, None)
            else:
                out[w] = s

        for w, c in self.coeffs.items():
            ws = tab.perms[tab.right_mul[tab.index[w]][i - 1]]
            if tab.longer_right(w, i):
                bump(ws, c)
            else:
                bump(ws, f.mul(c, q))
                bump(w, f.mul(c, qm1))
        return HeckeElt(self.r, out, f)

    def __mul__(self, other):
        if not isinstance(other, HeckeElt):
            return NotImplemented
        self._check(other)
        tab = perm_table(self.r)
        f = self.field
        total = HeckeElt.zero(self.r, f)
        for w, c in other.coeffs.items():
            term = self.scale(c)
            for i in tab.word_of(w):
                term = term.right_mul_gen(i)
            total = total + term
        return total

    # -- serialization --------------------------------------------------------

    def serialize(self):
        """Lines ``w_oneline : coeff`` sorted by the reduced-word order."""
        tab = perm_table(self.r)
        lines = []
        for idx in tab.word_order:
            w = tab.perms[idx]
            if w in self.coeffs:
                c = self.coeffs[w]
                text = c.serialize() if isinstance(c, RatFuncQ) else str(c)
                lines.append(f"{''.join(map(str, w))} : {text}")
        return "\n".join(lines)

    def __repr__(self):
        if not self.coeffs:
            return "HeckeElt(0)"
        tab = perm_table(self.r)
        bits = []
        for idx in tab.word_order:
            w = tab.perms[idx]
            if w in self.coeffs:
                word = tab.word_of(w)
                name = "T[" + "".join(map(str, word)) + "]" if word else "1"
                bits.append(f"({self.coeffs[w]})*{name}")
        return " + ".join(bits)


# ---------------------------------------------------------------------------
# Derived generators and involutions
# ---------------------------------------------------------------------------


def derived_generator(kind, i, r, field=EXACT):
    """The generator families built from T_i.

    kind:  p      (T_i + 1)/(q + 1)        idempotent
           q      (q - T_i)/(q + 1)        complementary idempotent
           f      (2 T_i + 1 - q)/(q + 1)  involution-like
           ptilde q^(-1/2) (T_i + 1)
           qtilde q^(-1/2) (q - T_i)
    """
    f = field
    t = HeckeElt.tgen(r, i, f)
    one = HeckeElt.one(r, f)
    qp1 = f.add(f.q, f.one)
    if kind == "p":
        return (t + one).scale(f.inv(qp1))
    if kind == "q":
        return (one.scale(f.q) - t).scale(f.inv(qp1))
    if kind == "f":
        return (t.scale(f.from_int(2)) + one.scale(f.sub(f.one, f.q))).scale(
            f.inv(qp1)
        )
    if kind == "ptilde":
        return (t + one).scale(f.inv(f.qh))
    if kind == "qtilde":
        return (one.scale(f.q) - t).scale(f.inv(f.qh))
    raise ValueError(f"unknown generator kind {kind!r}")


def _tgen_inverse(r, i, field):
    """T_i^{-1} = q^{-1} T_i - (1 - q^{-1})."""
    f = field
    qinv = f.inv(f.q)
    t = HeckeElt.tgen(r, i, f)
    one = HeckeElt.one(r, f)
    return t.scale(qinv) - one.scale(f.sub(f.one, qinv))


def involution(kind, a):
    """iota: bar on coefficients, T_i -> T_i^{-1}, extended multiplicatively.
    theta: coefficients fixed, T_i -> -T_i + q - 1."""
    f = a.field
    r = a.r
    tab = perm_table(r)
    if kind == "iota":
        if not f.exact:
            raise ValueError("iota needs the exact coefficient field")
        imgs = {i: _tgen_inverse(r, i, f) for i in range(1, r)}
        conj = lambda c: c.bar()
    elif kind == "theta":
        one = HeckeElt.one(r, f)
        imgs = {
            i: HeckeElt.tgen(r, i, f).scale(f.neg(f.one))
            + one.scale(f.sub(f.q, f.one))
            for i in range(1, r)
        }
        conj = lambda c: c
    else:
        raise ValueError(f"unknown involution {kind!r}")
    total = HeckeElt.zero(r, f)
    for w, c in a.coeffs.items():
        term = HeckeElt.one(r, f).scale(conj(c))
        for i in tab.word_of(w):
            term = term * imgs[i]
        total = total + term
    return total


# ---------------------------------------------------------------------------
# Kazhdan-Lusztig bases
# ---------------------------------------------------------------------------


def _left_mul_gen(a, i):
    """T_{s_i} * a, the left-handed version of right_mul_gen."""
    tab = perm_table(a.r)
    f = a.field
    q, qm1 = f.q, f.sub(f.q, f.one)
    out = {}

    def bump(w, c):
        s = f.add(out.get(w, f.zero), c)
        if f.is_zero(s):
            out.pop(w, None)
        else:
            out[w] = s

    for w, c in a.coeffs.items():
        v = list(w)
        # left multiplication swaps the values i, i+1
        pi, pj = v.index(i), v.index(i + 1)
        v[pi], v[pj] = v[pj], v[pi]
        sw = tuple(v)
        if tab.length[tab.index[sw]] > tab.length[tab.index[w]]:
            bump(sw, c)
        else:
            bump(sw, f.mul(c, q))
            bump(w, f.mul(c, qm1))
    return HeckeElt(a.r, out, f)


@lru_cache(maxsize=None)
def kl_cprime_basis(r):
    """The C'_w basis: C'_w = q^(-l(w)/2) sum_{y <= w} P_{y,w}(q) T_y.

    Computed by the multiplication recursion C'_s C'_v = C'_{sv} +
    sum mu(z, v) C'_z over z < v with sz < z, where s is a left descent.
    Desk scale: r <= 6.
    """
    if r > 6:
        raise ValueError("Kazhdan-Lusztig bases are desk-scale: r <= 6")
    f = EXACT
    tab = perm_table(r)
    order = sorted(range(len(tab.perms)), key=lambda i: tab.length[i])
    basis = {}
    cprime_s = {
        i: derived_generator("ptilde", i, r, f) for i in range(1, r)
    }
    for idx in order:
        w = tab.perms[idx]
        if tab.length[idx] == 0:
            basis[w] = HeckeElt.one(r, f)
            continue
        # first letter of the minimal word is a left descent
        s = tab.word_of(w)[0]
        v = list(w)
        pi, pj = v.index(s), v.index(s + 1)
        v[pi], v[pj] = v[pj], v[pi]
        v = tuple(v)
        # C'_s x = q^(-1/2) (T_s x + x)
        prod = (_left_mul_gen(basis[v], s) + basis[v]).scale(f.inv(f.qh))
        corr = HeckeElt.zero(r, f)
        for z, cz in basis[v].coeffs.items():
            lz = tab.length[tab.index[z]]
            # mu(z, v): coefficient of q^(-(l(z)+1)/2) in the T_z coefficient
            mono = cz.monomial_denominator()
            if mono is None:
                continue
            den, num = mono
            mu2 = num.terms.get(-(lz + 1))
            if not mu2 or mu2 % den:
                if mu2:
                    raise ArithmeticError("non-integral mu in KL recursion")
                continue
            mu = mu2 // den
            # z must also be shorter-on-the-left: s z < z
            zv = list(z)
            pi, pj = zv.index(s), zv.index(s + 1)
            zv[pi], zv[pj] = zv[pj], zv[pi]
            if tab.length[tab.index[tuple(zv)]] < lz:
                corr = corr + basis[z].scale(f.from_int(mu))
        basis[w] = prod - corr
    return basis


@lru_cache(maxsize=None)
def kl_basis(r):
    """The KL basis in the sign convention where C_{s_i} = -qtilde_i:

        C_w = sum_{y <= w} (-1)^(l(w)-l(y)) q^(l(w)/2 - l(y))
              P_{y,w}(1/q) T_y.

    Every C_w is fixed by the bar involution iota.
    """
    tab = perm_table(r)
    out = {}
    for w, cp in kl_cprime_basis(r).items():
        lw = tab.length[tab.index[w]]
        coeffs = {}
        for y, c in cp.coeffs.items():
            ly = tab.length[tab.index[y]]
            # c = q^(-l(w)/2) P_{y,w}(q); recover P and rebuild with signs
            p_poly = c.num.shift(lw)  # denominators of C' coefficients are 1
            if c.den != RatFuncQ.one().den:
                raise ArithmeticError("unexpected denominator in C' basis")
            val = RatFuncQ(p_poly.bar().shift(lw - 2 * ly), c.den)
            if (lw - ly) % 2:
                val = -val
            coeffs[y] = val
        out[w] = HeckeElt(r, coeffs, EXACT)
    return out


def kl_polynomials(r):
    """KL polynomials P_{y,w} as HalfLaurentPoly in q (doubled even keys)."""
    tab = perm_table(r)
    out = {}
    for w, cp in kl_cprime_basis(r).items():
        lw = tab.length[tab.index[w]]
        for y, c in cp.coeffs.items():
            out[(y, w)] = c.num.shift(lw)
    return out


# ---------------------------------------------------------------------------
# R-matrix and the tensor action
# ---------------------------------------------------------------------------


class RMatrix:
    """R-hat for the vector representation: the braided flip on V (x) V.

    With parameter s (s = q for the bialgebra relations, s = q^(1/2) for
    the Hecke action on tensors):

        Rhat(v_a (x) v_b) = s v_ab                         a == b
                            v_ba + (s - 1/s) v_ab          a < b
                            v_ba                           a > b

    satisfying (Rhat - s)(Rhat + 1/s) = 0 and the braid identity.
    """

    def __init__(self, dim, half=False, field=EXACT):
        self.dim = dim
        self.field = field
        self.half = half
        f = field
        s = f.qh if half else f.q
        self.param = s
        sinv = f.inv(s)
        n = dim
        ent = [[f.zero] * (n * n) for _ in range(n * n)]
        for a in range(n):
            for b in range(n):
                col = a * n + b
                if a == b:
                    ent[col][col] = s
                elif a < b:
                    ent[b * n + a][col] = f.one
                    ent[col][col] = f.sub(s, sinv)
                else:
                    ent[b * n + a][col] = f.one
        # entries[row][col], acting on column vectors indexed by (a, b)
        self.entries = ent

    def projector_pair(self):
        """(P_plus, P_minus) with P+ = (Rhat + 1/s)/(s + 1/s)."""
        f = self.field
        s = self.param
        sinv = f.inv(s)
        norm = f.inv(f.add(s, sinv))
        n2 = self.dim * self.dim
        plus = [
            [
                f.mul(norm, f.add(self.entries[i][j], sinv if i == j else f.zero))
                for j in range(n2)
            ]
            for i in range(n2)
        ]
        minus = [
            [
                f.sub((f.one if i == j else f.zero), plus[i][j])
                for j in range(n2)
            ]
            for i in range(n2)
        ]
        return plus, minus


def rmatrix(n, half=False, field=EXACT):
    return RMatrix(n, half, field)


def _local_operator(block, pos, n, r, field):
    """Extend an n^2 x n^2 block acting on factors (pos, pos+1) to n^r."""
    f = field
    size = n ** r
    left = n ** (pos - 1)
    right = n ** (r - pos - 1)
    cols = {}
    for col in range(size):
        rest, rgt = divmod(col, right)
        rest, pair = divmod(rest, n * n)
        outcol = {}
        for rowpair in range(n * n):
            c = block[rowpair][pair]
            if not f.is_zero(c):
                outcol[(rest * (n * n) + rowpair) * right + rgt] = c
        cols[col] = outcol
    return cols


def tensor_generator_images(n, r, field=EXACT):
    """Images of p_i on V^(x r): the positive projector on factors (i, i+1).

    Built from the R-matrix at parameter q^(1/2), which is what makes the
    assignment T_i -> (q+1) P_i^+ - 1 a homomorphism from H_r(q).
    Returns a list of sparse column maps {col: {row: coeff}}.
    """
    plus, _ = rmatrix(n, half=True, field=field).projector_pair()
    return [
        _local_operator(plus, i, n, r, field) for i in range(1, r)
    ]


def act_on_tensor(a, n):
    """The matrix of a in the representation of H_r(q) on V^(x r).

    Returns a dense matrix (list of rows) over a.field, of size n^r.
    """
    f = a.field
    r = a.r
    size = n ** r
    tab = perm_table(r)
    pimgs = tensor_generator_images(n, r, f)
    # T_i image as a dense matrix: (q + 1) P_i - Id
    qp1 = f.add(f.q, f.one)
    timgs = {}
    for i in range(1, r):
        m = [[f.zero] * size for _ in range(size)]
        for col, colmap in enumerate(pimgs[i - 1]):
            for row, c in pimgs[i - 1][col].items():
                m[row][col] = f.mul(qp1, c)
            m[col][col] = f.sub(m[col][col], f.one)
        timgs[i] = m
    total = [[f.zero] * size for _ in range(size)]
    for w, c in a.coeffs.items():
        word = tab.word_of(w)
        cur = None
        for i in word:
            cur = timgs[i] if cur is None else mat_mul(f, cur, timgs[i])
        if cur is None:
            cur = mat_identity(f, size)
        for i in range(size):
            crow = cur[i]
            trow = total[i]
            for j in range(size):
                if not f.is_zero(crow[j]):
                    trow[j] = f.add(trow[j], f.mul(c, crow[j]))
    return total


def tensor_rep_rank(elts, n, field):
    """Rank of the span of the images of ``elts`` on V^(x r) over ``field``."""
    mats = [act_on_tensor(e, n) for e in elts]
    size = len(mats[0])
    ech = Echelon(field, key_rank=lambda k: k)
    rank = 0
    for m in mats:
        vec = {}
        for i in range(size):
            for j in range(size):
                if not field.is_zero(m[i][j]):
                    vec[i * size + j] = m[i][j]
        piv, _ = ech.insert(vec)
        if piv is not None:
            rank += 1
    return rank
