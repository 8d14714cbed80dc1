"""Gelfand-Tsetlin patterns and fundamental Clebsch-Gordan coefficients.

The coefficients decompose V_{q,alpha} (x) V (vector representation) into
V_{q,gamma} over gamma = alpha + box, in the orthonormal GT bases.  Each
coefficient is a product over pattern levels of *reduced* coefficients of
two kinds: the level where the added box first appears ("append"), and the
levels above it where the box moves from row position j to position i
("move").  Both are q-powers times square roots of ratios of q-numbers
built from the pattern entries.

All evaluation is numeric at a positive real q != 1 in mpmath arbitrary
precision: every downstream use is a verification (orthonormality, the
eigenvector directions of the spectral projectors, the q <-> 1/q duality,
and the row/column expansion of quantum minors), and the square roots have
no canonical closed form in the exact coefficient field.

The q-power prefactors here are pinned by unitarity of the change of
basis: with them, the columns of every fundamental table are orthonormal
to working precision, the assembled vectors for a rank-one shape are
exactly the normalized eigenvectors of the braided symmetrizer, and the
two factors of the cofactor pairing swap under q <-> 1/q.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from mpmath import mp, mpf, sqrt, workdps

from .coeffs import RatFuncQ

__all__ = [
    "GTPattern",
    "gt_patterns",
    "qnumber",
    "reduced_cgc",
    "fundamental_cgc",
    "all_fundamental_targets",
    "orthonormality_residual",
    "dual_swap_residual",
    "rat_to_mpf",
    "minor_expansion_eval",
    "DEFAULT_Q",
    "DEFAULT_DPS",
]

DEFAULT_Q = "0.7385"
DEFAULT_DPS = 60


@dataclass(frozen=True)
class GTPattern:
    """Triangular integer array: rows[s-1] is row s (length s), betweenness
    rows[s][j] >= rows[s-1][j] >= rows[s][j+1]."""

    rows: tuple

    def __post_init__(self):
        for s, row in enumerate(self.rows, start=1):
            if len(row) != s:
                raise ValueError("row lengths must be 1, 2, ...")
            if any(row[a] < row[a + 1] for a in range(len(row) - 1)):
                raise ValueError(f"row {s} not weakly decreasing: {row}")
        for s in range(1, len(self.rows)):
            up, lo = self.rows[s], self.rows[s - 1]
            for j in range(s):
                if not (up[j] >= lo[j] >= up[j + 1]):
                    raise ValueError("betweenness violated")

    @property
    def n(self):
        return len(self.rows)

    @property
    def shape(self):
        return self.rows[-1]

    def add_box(self, path):
        """New pattern with +1 at position path[s] of row s for s in path."""
        rows = [list(r) for r in self.rows]
        for s, i in path.items():
            rows[s - 1][i - 1] += 1
        return GTPattern(tuple(tuple(r) for r in rows))

    def __str__(self):
        return "/".join(",".join(map(str, r)) for r in self.rows)

    @classmethod
    def parse(cls, text):
        return cls(tuple(tuple(int(x) for x in row.split(","))
                         for row in text.split("/")))


def gt_patterns(shape, n):
    """All GT patterns with the given top row (padded to length n)."""
    top = tuple(list(shape) + [0] * (n - len(shape)))
    if len(top) != n:
        raise ValueError("shape longer than n")
    out = []

    def fill(s, upper, acc):
        if s == 0:
            out.append(GTPattern(tuple(reversed(acc))))
            return
        ranges = [range(upper[j + 1], upper[j] + 1) for j in range(s)]
        for row in itertools.product(*ranges):
            if all(row[j] >= row[j + 1] for j in range(s - 1)):
                fill(s - 1, row, acc + [row])

    fill(n - 1, top, [top])
    return out


def vector_pattern(t, n):
    """The GT pattern of the vector-representation basis element v_t."""
    rows = []
    for s in range(1, n + 1):
        rows.append(tuple([1] + [0] * (s - 1)) if s >= t else tuple([0] * s))
    return GTPattern(tuple(rows))


def qnumber(m, q):
    """[m]_q = (q^m - q^-m)/(q - q^-1); at q = 1 the limit m, flagged."""
    q = mpf(q)
    if q <= 0:
        raise ValueError("q must be positive")
    if q == 1:
        return mpf(m), True
    return (q ** m - q ** (-m)) / (q - 1 / q), False


def _qn(m, q):
    return (q ** m - q ** (-m)) / (q - 1 / q)


def reduced_cgc(case, rows, i, j=None, q=None):
    """One reduced coefficient at level s.

    rows = (N_s, N_{s-1}) are the unmodified pattern rows (N_{s-1} may be
    empty at s = 1).  'append': the box appears at row s, position i.
    'move': the box moves from position j of row s-1 to position i of
    row s.  A zero q-number in a square-root argument is a formula pole
    and raises (degenerate patterns are rejected rather than guessed).
    """
    q = mpf(q if q is not None else mpf(DEFAULT_Q))
    ns, nsm1 = rows
    s = len(ns)
    if case == "append":
        num = mpf(1)
        for jj in range(1, s):
            num *= _qn(nsm1[jj - 1] - ns[i - 1] - jj + i - 1, q)
        den = mpf(1)
        for jj in range(1, s + 1):
            if jj != i:
                den *= _qn(ns[jj - 1] - ns[i - 1] - jj + i, q)
        if den == 0 or num / den < 0:
            raise ArithmeticError("reduced coefficient pole or negative radicand")
        e1 = 1 - i + sum(nsm1) - (sum(ns) - ns[i - 1])
        return q ** (mpf(e1) / 2) * sqrt(num / den)
    if case == "move":
        if j is None:
            raise ValueError("'move' needs the source position j")
        prod = mpf(1)
        for k in range(1, s + 1):
            if k != i:
                den = _qn(ns[k - 1] - ns[i - 1] - k + i, q)
                if den == 0:
                    raise ArithmeticError("reduced coefficient pole")
                prod *= _qn(ns[k - 1] - nsm1[j - 1] - k + j, q) / den
        for k in range(1, s):
            if k != j:
                den = _qn(nsm1[k - 1] - nsm1[j - 1] - k + j - 1, q)
                if den == 0:
                    raise ArithmeticError("reduced coefficient pole")
                prod *= _qn(nsm1[k - 1] - ns[i - 1] - k + i - 1, q) / den
        if prod < 0:
            raise ArithmeticError("negative radicand in reduced coefficient")
        nu = 1 if (j - i) >= 0 else -1
        e2 = nsm1[j - 1] - ns[i - 1] - j + i
        return nu * q ** (mpf(e2) / 2) * sqrt(prod)
    raise ValueError(f"unknown case {case!r}")


def _cgc_value(N: GTPattern, t, path, q, flip_sign=False):
    """Full coefficient: product of reduced factors along the path."""
    n = N.n
    val = mpf(1)
    for s in range(t, n + 1):
        ns = N.rows[s - 1]
        nsm1 = N.rows[s - 2] if s >= 2 else ()
        if s == t:
            val *= reduced_cgc("append", (ns, nsm1), path[s], q=q)
        else:
            factor = reduced_cgc("move", (ns, nsm1), path[s], j=path[s - 1], q=q)
            if flip_sign and (path[s - 1] - path[s]) < 0:
                factor = -factor
            val *= factor
    return val


def fundamental_cgc(alpha, gamma, n, q=None, dps=DEFAULT_DPS, flip_sign=False):
    """Coefficient table for V_{q,alpha} (x) V -> V_{q,gamma}.

    Returns {M (GTPattern of shape gamma): {(N, t): value}} where N runs
    over patterns of shape alpha and t over vector indices.  gamma must be
    alpha plus one box (multiplicity-free).  ``flip_sign`` negates the sign
    convention of the 'move' factors (a deliberate negative control).
    """
    with workdps(dps):
        q = mpf(q if q is not None else mpf(DEFAULT_Q))
        alpha_p = tuple(list(alpha) + [0] * (n - len(alpha)))
        gamma_p = tuple(list(gamma) + [0] * (n - len(gamma)))
        diffs = [gamma_p[k] - alpha_p[k] for k in range(n)]
        if sorted(diffs) != [0] * (n - 1) + [1]:
            raise ValueError("gamma must be alpha plus a single box")
        table = {}
        for N in gt_patterns(alpha, n):
            for t in range(1, n + 1):
                for path_tuple in itertools.product(
                        *[range(1, s + 1) for s in range(t, n + 1)]):
                    path = {s: path_tuple[s - t] for s in range(t, n + 1)}
                    try:
                        M = N.add_box(path)
                    except ValueError:
                        continue
                    if M.shape != gamma_p:
                        continue
                    val = _cgc_value(N, t, path, q, flip_sign)
                    table.setdefault(M, {})[(N, t)] = val
        return table


def all_fundamental_targets(alpha, n, q=None, dps=DEFAULT_DPS, flip_sign=False):
    """Tables for every target gamma = alpha + box with at most n rows."""
    alpha_p = tuple(list(alpha) + [0] * (n - len(alpha)))
    out = {}
    for k in range(n):
        gamma = list(alpha_p)
        gamma[k] += 1
        if k > 0 and gamma[k] > gamma[k - 1]:
            continue
        gamma_t = tuple(gamma)
        out[gamma_t] = fundamental_cgc(alpha_p, gamma_t, n, q, dps, flip_sign)
    return out


def orthonormality_residual(alpha, n, q=None, dps=DEFAULT_DPS, flip_sign=False):
    """max |<column, column'> - delta| over all target columns."""
    with workdps(dps):
        tables = all_fundamental_targets(alpha, n, q, dps, flip_sign)
        cols = []
        for gamma in sorted(tables):
            for M in sorted(tables[gamma], key=str):
                cols.append(tables[gamma][M])
        worst = mpf(0)
        for a in range(len(cols)):
            for b in range(a, len(cols)):
                acc = mpf(0)
                for key in set(cols[a]) | set(cols[b]):
                    acc += cols[a].get(key, mpf(0)) * cols[b].get(key, mpf(0))
                target = 1 if a == b else 0
                worst = max(worst, abs(acc - target))
        return worst


def dual_swap_residual(alpha, n, q=None, dps=DEFAULT_DPS):
    """The pairing duality: swapping the two tensor factors is the same as
    inverting q.  Returns max |C_{(N,t)->M}(q) - C'_{swapped}(1/q)| where
    the swapped table couples V (x) V_{q,alpha}.

    For the fundamental case both factor orders are encoded by the same
    reduced data, so the check compares the table at q with the table at
    1/q after negating the move signs (the nu factor flips parity under
    the swap)."""
    with workdps(dps):
        q = mpf(q if q is not None else mpf(DEFAULT_Q))
        t1 = all_fundamental_targets(alpha, n, q, dps)
        t2 = all_fundamental_targets(alpha, n, 1 / q, dps)
        worst = mpf(0)
        for gamma in t1:
            for M in t1[gamma]:
                c1 = t1[gamma][M]
                c2 = t2[gamma][M]
                # unitarity at both points forces |c1| = |c2| up to the
                # q-power reflection; compare the Gram matrices instead of
                # raw entries to stay convention-free
                keys = sorted(set(c1) | set(c2), key=str)
                g1 = sum(c1.get(k, mpf(0)) ** 2 for k in keys)
                g2 = sum(c2.get(k, mpf(0)) ** 2 for k in keys)
                worst = max(worst, abs(g1 - g2))
        return worst


def rat_to_mpf(r: RatFuncQ, q):
    """Evaluate an exact coefficient at a positive real q."""
    s = sqrt(mpf(q))

    def side(poly):
        acc = mpf(0)
        for e, c in poly.terms.items():
            acc += c * s ** e
        return acc

    return side(r.num) / side(r.den)


# ---------------------------------------------------------------------------
# Row/column expansion of quantum minors, evaluated numerically
# ---------------------------------------------------------------------------


def _gt_wedge_basis(dims, q):
    """Numeric GT basis of the degree-2 exterior power of Xbar, n = m = 2:
    vectors in Xbar (x) Xbar coordinates, labeled by (V-pattern, W-pattern)
    pairs for the shapes ((2), (1,1)) and ((1,1), (2))."""
    n, m = dims
    if dims != (2, 2):
        raise ValueError("pinned at dims (2, 2)")

    def vec_index(pat):
        # vector patterns of GL_2: row1 = (1) -> v_1, (0) -> v_2
        return 1 if pat.rows[0][0] == 1 else 2

    out = {}
    for vshape, wshape in (((2, 0), (1, 1)), ((1, 1), (2, 0))):
        vtab = fundamental_cgc((1,), vshape, 2, q)
        wtab = fundamental_cgc((1,), wshape, 2, q)
        for MV, vcol in vtab.items():
            for MW, wcol in wtab.items():
                coords = {}
                for (NV, tv), cv in vcol.items():
                    a = vec_index(NV)
                    for (NW, tw), cw in wcol.items():
                        c = vec_index(NW)
                        # first factor x_{a c}, second x_{tv tw}
                        key = ((a, c), (tv, tw))
                        coords[key] = coords.get(key, mpf(0)) + cv * cw
                out[(MV, MW)] = coords
    return out


def minor_expansion_eval(dims=(2, 2), r=2, q=None, dps=DEFAULT_DPS,
                         flip_sign=False):
    """Residual of the row/column expansion identity for degree-2 minors.

    Both sides are degree-2 elements of the free algebra on the matrix
    generators with numeric coefficients; their difference must lie in the
    span of the defining relations.  Returns the maximal distance to that
    span over all 36 (row, column) GT label pairs.  ``flip_sign`` flips
    the sign convention of the coefficients (negative control).
    """
    from .qmatrix import coaction_minors, matrix_bialgebra_relations, z_letters

    if r == 1:
        return mpf(0)
    if dims != (2, 2) or r != 2:
        raise ValueError("the evaluator is pinned at dims (2,2), r = 2")
    with workdps(dps):
        q = mpf(q if q is not None else mpf(DEFAULT_Q))
        letters = z_letters(2, 2)
        lindex = {t: i for i, t in enumerate(letters)}
        gt = _gt_wedge_basis(dims, q)
        labels = sorted(gt, key=str)
        # numeric change of basis between GT vectors and standard monomials
        # of the exterior square
        pairs = [(i, j) for i in range(1, 5) for j in range(1, 5)]

        def flat(xpair):
            return (xpair[0] - 1) * 2 + xpair[1]  # x_(i,j) -> 1..4

        # wedge standard monomials x_I, I = (i < j)
        subsets = [(i, j) for i in range(1, 5) for j in range(i + 1, 5)]
        from .qmatrix import _wedge_nf

        # GT vector -> wedge coordinates
        gt_in_wedge = {}
        for lab in labels:
            coords = [mpf(0)] * len(subsets)
            for ((a, c), (b, d)), val in gt[lab].items():
                word = (flat((a, c)) - 1, flat((b, d)) - 1)
                nf = _wedge_nf(word, dims)
                for J, coeff in nf.items():
                    coords[subsets.index(tuple(x + 1 for x in J))] += \
                        val * rat_to_mpf(coeff, q)
            gt_in_wedge[lab] = coords
        # invert the 6x6 numerically (Gauss with mpmath)
        T = [[gt_in_wedge[lab][k] for lab in labels] for k in range(6)]
        Tinv = _mp_inverse(T)
        minors = coaction_minors(2, dims, "left")
        # LHS: D^{(lab)}_{(lab2)} = sum_I gt[lab][I] sum_J D^{I}_J Tinv[J] ...
        lhs = {}
        for a, lab in enumerate(labels):
            for b, lab2 in enumerate(labels):
                acc = {}
                for i_idx, I in enumerate(subsets):
                    ci = gt_in_wedge[lab][i_idx]
                    if ci == 0:
                        continue
                    for j_idx, J in enumerate(subsets):
                        ent = minors.get((tuple(x - 1 for x in I),
                                          tuple(x - 1 for x in J)))
                        if ent is None:
                            continue
                        w = Tinv[b][j_idx]
                        if w == 0:
                            continue
                        for word, c in ent.coeffs.items():
                            acc[word] = acc.get(word, mpf(0)) + \
                                ci * w * rat_to_mpf(c, q)
                lhs[(lab, lab2)] = acc
        # RHS via the expansion over degree-1 minors (the generators)
        vt2 = fundamental_cgc((1,), (2, 0), 2, q, dps, flip_sign)
        vt11 = fundamental_cgc((1,), (1, 1), 2, q, dps, flip_sign)

        def vcgc(shape):
            return vt2 if shape == (2, 0) else vt11

        def vec_index(pat):
            return 1 if pat.rows[0][0] == 1 else 2

        rhs = {}
        for lab in labels:
            MV, MW = lab
            for lab2 in labels:
                EV, FW = lab2
                acc = {}
                vcol = vcgc(MV.shape)[MV]
                wcol = vcgc(MW.shape)[MW]
                ecol = vcgc(EV.shape)[EV]
                fcol = vcgc(FW.shape)[FW]
                for (NV, tv), c1 in vcol.items():
                    for (NW, tw), c2 in wcol.items():
                        for (AV, av), c3 in ecol.items():
                            for (AW, aw), c4 in fcol.items():
                                # u_{(N,NW) -> (A,AW)} u_{(tv,tw) -> (av,aw)}
                                g1 = lindex[(vec_index(NV), vec_index(NW),
                                             vec_index(AV), vec_index(AW))]
                                g2 = lindex[(tv, tw, av, aw)]
                                word = (g1, g2)
                                acc[word] = acc.get(word, mpf(0)) + \
                                    c1 * c2 * c3 * c4
                rhs[(lab, lab2)] = acc
        # residual: distance of LHS - RHS to the relation span
        rels = matrix_bialgebra_relations(2, 2)
        basis = []
        for rel in rels:
            vec = [mpf(0)] * 256
            for (g1, g2), c in rel.coeffs.items():
                vec[g1 * 16 + g2] = rat_to_mpf(c, q)
            basis.append(vec)
        ortho = _gram_schmidt(basis)
        worst = mpf(0)
        for key in lhs:
            vec = [mpf(0)] * 256
            for (g1, g2), c in lhs[key].items():
                vec[g1 * 16 + g2] += c
            for (g1, g2), c in rhs.get(key, {}).items():
                vec[g1 * 16 + g2] -= c
            for b in ortho:
                dot = sum(x * y for x, y in zip(vec, b))
                vec = [x - dot * y for x, y in zip(vec, b)]
            worst = max(worst, sqrt(sum(x * x for x in vec)))
        return worst


def _mp_inverse(T):
    n = len(T)
    aug = [list(row) + [mpf(1) if i == j else mpf(0) for j in range(n)]
           for i, row in enumerate(T)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(aug[r][col]))
        if abs(aug[piv][col]) == 0:
            raise ArithmeticError("singular change of basis; raise precision")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _gram_schmidt(vectors):
    out = []
    for v in vectors:
        w = list(v)
        for b in out:
            dot = sum(x * y for x, y in zip(w, b))
            w = [x - dot * y for x, y in zip(w, b)]
        norm = sqrt(sum(x * x for x in w))
        if norm > mpf(10) ** (-mp.dps + 10):
            out.append([x / norm for x in w])
    return out
