"""Exact arithmetic in the field Q(q^(1/2)).

Everything downstream (Hecke algebras, the commutant algebra, the quantum
matrix bialgebra) has coefficients in the field of rational functions in
q^(1/2) with integer coefficients.  Half-integer exponents are stored as
*doubled* integers, so a term q^(k/2) lives at key ``k``; ordinary powers of
q sit at even keys.  This keeps all exponent arithmetic integral.

The module also provides the modular side of the pipeline: specialization
of a rational function at a point (p, q0) of Z_p (with an optional square
root of q0 for half-integer exponents), and the inverse direction --
reconstructing a rational function in q from residues sampled at many
points across at least two primes (Cauchy interpolation per prime, CRT,
then rational number reconstruction of each coefficient).

Normal forms are canonical: two values are equal iff their (numerator,
denominator) pairs are identical.  The denominator is normalized to have
lowest exponent 0 and positive leading coefficient, numerator and
denominator share no polynomial factor over Q and no common integer
content.  (A denominator of content > 1, e.g. ``1/2``, is legal; only the
*joint* content is removed, since the numerator is required to stay
integral.)
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

__all__ = [
    "HalfLaurentPoly",
    "RatFuncQ",
    "ModSpec",
    "PRIMES",
    "BadEvaluationPointError",
    "ReconstructionError",
    "reconstruct",
    "rational_reconstruct",
    "default_points",
]

# Fixed, documented list of 62-bit primes used for all modular runs.  Two
# independent primes make an accidental cancellation astronomically
# unlikely; the list is fixed so that runs are reproducible.
PRIMES = (
    2305843009213693967,
    2305843009213693973,
    2305843009213694009,
    2305843009213694017,
    2305843009213694087,
    2305843009213694149,
    2305843009213694173,
    2305843009213694207,
)


class BadEvaluationPointError(ArithmeticError):
    """A denominator vanished at the chosen (prime, q-value) point."""


class ReconstructionError(ArithmeticError):
    """Sampled residues are inconsistent with a single rational function."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


# ---------------------------------------------------------------------------
# Laurent polynomials in q^(1/2)
# ---------------------------------------------------------------------------


class HalfLaurentPoly:
    """Laurent polynomial in q^(1/2) over Z, keyed by doubled exponents.

    ``terms`` maps the doubled exponent k (an int, possibly negative) to a
    nonzero integer coefficient; the monomial is q^(k/2).
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None, _clean=True):
        if terms is None:
            self.terms = {}
        elif _clean:
            self.terms = {e: c for e, c in terms.items() if c}
        else:
            self.terms = terms

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls({}, _clean=False)

    @classmethod
    def const(cls, c):
        return cls({0: c} if c else {}, _clean=False)

    @classmethod
    def q_power(cls, k2, c=1):
        """c * q^(k2/2)."""
        return cls({k2: c} if c else {}, _clean=False)

    @classmethod
    def from_q_coeffs(cls, coeffs, low2=0):
        """Integer-exponent polynomial sum(coeffs[i] * q^i) shifted by q^(low2/2)."""
        return cls({low2 + 2 * i: c for i, c in enumerate(coeffs) if c}, _clean=False)

    # -- structure ----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def low2(self):
        return min(self.terms)

    def high2(self):
        return max(self.terms)

    def leading_coeff(self):
        return self.terms[max(self.terms)]

    def content(self):
        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
        return g

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, HalfLaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return HalfLaurentPoly(t, _clean=False)

    def __sub__(self, other):
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e, 0) - c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return HalfLaurentPoly(t, _clean=False)

    def __neg__(self):
        return HalfLaurentPoly({e: -c for e, c in self.terms.items()}, _clean=False)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return HalfLaurentPoly.zero()
            return HalfLaurentPoly(
                {e: c * other for e, c in self.terms.items()}, _clean=False
            )
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                s = t.get(e, 0) + c1 * c2
                if s:
                    t[e] = s
                else:
                    del t[e]
        return HalfLaurentPoly(t, _clean=False)

    __rmul__ = __mul__

    def shift(self, k2):
        """Multiply by q^(k2/2)."""
        if not k2:
            return self
        return HalfLaurentPoly({e + k2: c for e, c in self.terms.items()}, _clean=False)

    def scale_exponents(self, factor):
        """Substitute q^(1/2) -> q^(factor/2); factor=-1 is the bar map."""
        return HalfLaurentPoly({e * factor: c for e, c in self.terms.items()}, _clean=False)

    def bar(self):
        """The involution q^(1/2) -> q^(-1/2)."""
        return self.scale_exponents(-1)

    def exact_div_int(self, d):
        return HalfLaurentPoly({e: c // d for e, c in self.terms.items()}, _clean=False)

    # -- dense helpers (internal; positive-exponent polynomials in t) -------

    def _as_dense(self):
        """Return (low2, [c_low, ..., c_high]) as a dense poly in t = q^(1/2)."""
        if not self.terms:
            return 0, []
        lo, hi = min(self.terms), max(self.terms)
        dense = [0] * (hi - lo + 1)
        for e, c in self.terms.items():
            dense[e - lo] = c
        return lo, dense

    @classmethod
    def _from_dense(cls, low2, dense):
        return cls({low2 + i: c for i, c in enumerate(dense) if c}, _clean=False)

    # -- evaluation ---------------------------------------------------------

    def specialize(self, spec):
        """Evaluate at the point described by a ModSpec, in Z_p."""
        p = spec.prime
        acc = 0
        for e, c in self.terms.items():
            if e % 2 == 0:
                pw = pow(spec.qval, e // 2, p) if e >= 0 else pow(spec.qval_inv, (-e) // 2, p)
            else:
                s = spec.sqrt_qval
                if s is None:
                    raise BadEvaluationPointError(
                        "half-integer exponent requires sqrt_qval in ModSpec"
                    )
                pw = pow(s, e, p) if e >= 0 else pow(spec.sqrt_qval_inv, -e, p)
            acc = (acc + c * pw) % p
        return acc

    # -- display ------------------------------------------------------------

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            if e == 0:
                bits.append(f"{c}")
            elif e % 2 == 0:
                bits.append(f"{c}*q^{e // 2}")
            else:
                bits.append(f"{c}*q^({e}/2)")
        return " + ".join(bits).replace("+ -", "- ")


# dense integer polynomial helpers (coefficient lists, lowest degree first)


def _dense_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _dense_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _dense_trim(out)


def _dense_content(a):
    g = 0
    for c in a:
        g = gcd(g, c)
    return g


def _dense_primitive(a):
    g = _dense_content(a)
    if g in (0, 1):
        return list(a), max(g, 1)
    return [c // g for c in a], g


def _dense_pseudo_rem(a, b):
    """Pseudo-remainder of a by b (b nonzero), over Z."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        da, la = len(a) - 1, a[-1]
        a = [c * lb for c in a]
        shift = da - db
        for i, c in enumerate(b):
            a[shift + i] -= la * c
        _dense_trim(a)
    return a


def _dense_gcd(a, b):
    """Primitive gcd in Z[t] via the primitive PRS."""
    a, _ = _dense_primitive(_dense_trim(list(a)))
    b, _ = _dense_primitive(_dense_trim(list(b)))
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _dense_pseudo_rem(a, b)
        r, _ = _dense_primitive(r)
        a, b = b, r
    if a and a[-1] < 0:
        a = [-c for c in a]
    return a


def _dense_exact_div(a, b):
    """Exact division a / b in Z[t]; raises if not exact."""
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    db, lb = len(b) - 1, b[-1]
    for k in range(len(out) - 1, -1, -1):
        da = db + k
        if da >= len(a):
            continue
        c = a[da]
        if c % lb:
            raise ArithmeticError("inexact polynomial division")
        ck = c // lb
        out[k] = ck
        if ck:
            for i, bc in enumerate(b):
                a[k + i] -= ck * bc
    if any(a[: db + 1]) or any(a[db + 1:]):
        if any(a):
            raise ArithmeticError("inexact polynomial division")
    return _dense_trim(out)


# ---------------------------------------------------------------------------
# The coefficient field
# ---------------------------------------------------------------------------


class RatFuncQ:
    """A rational function in q^(1/2), in canonical form.

    Canonical form: ``den`` has lowest exponent 0 and positive leading
    coefficient, gcd(num, den) over Q[t] is 1, and the integer contents of
    num and den are coprime.  Equality and hashing use the canonical pair.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _normalized=False):
        if den is None:
            den = HalfLaurentPoly.const(1)
        if _normalized:
            self.num = num
            self.den = den
            return
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in RatFuncQ")
        if num.is_zero():
            self.num = HalfLaurentPoly.zero()
            self.den = HalfLaurentPoly.const(1)
            return
        nlo, ndense = num._as_dense()
        dlo, ddense = den._as_dense()
        # all q-power shift migrates to the numerator
        shift = nlo - dlo
        g = _dense_gcd(ndense, ddense)
        if len(g) > 1:
            ndense = _dense_exact_div(ndense, g)
            ddense = _dense_exact_div(ddense, g)
        cn = _dense_content(ndense)
        cd = _dense_content(ddense)
        cg = gcd(cn, cd)
        if ddense[-1] < 0:
            cg = -cg
        if cg != 1:
            ndense = [c // cg for c in ndense]
            ddense = [c // cg for c in ddense]
        self.num = HalfLaurentPoly._from_dense(shift, ndense)
        self.den = HalfLaurentPoly._from_dense(0, ddense)

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls(HalfLaurentPoly.zero(), HalfLaurentPoly.const(1), _normalized=True)

    @classmethod
    def one(cls):
        return cls(HalfLaurentPoly.const(1), HalfLaurentPoly.const(1), _normalized=True)

    @classmethod
    def from_int(cls, n):
        return cls(HalfLaurentPoly.const(n), HalfLaurentPoly.const(1), _normalized=True)

    @classmethod
    def q_power(cls, k2, c=1):
        """c * q^(k2/2) as a field element."""
        num = HalfLaurentPoly.q_power(k2, c)
        return cls(num, HalfLaurentPoly.const(1), _normalized=True)

    @classmethod
    def from_q_coeffs(cls, num_coeffs, den_coeffs=(1,)):
        """Polynomial fraction in integer powers of q from coefficient lists."""
        return cls(
            HalfLaurentPoly.from_q_coeffs(list(num_coeffs)),
            HalfLaurentPoly.from_q_coeffs(list(den_coeffs)),
        )

    # -- predicates ---------------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.terms == {0: 1} and self.den.terms == {0: 1}

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            other = RatFuncQ.from_int(other)
        return (
            isinstance(other, RatFuncQ)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    # -- field operations ----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = RatFuncQ.from_int(other)
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den == other.den:
            return RatFuncQ(self.num + other.num, self.den)
        return RatFuncQ(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = RatFuncQ.from_int(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return RatFuncQ(-self.num, self.den, _normalized=True)

    def __mul__(self, other):
        if isinstance(other, int):
            other = RatFuncQ.from_int(other)
        if self.num.is_zero() or other.num.is_zero():
            return RatFuncQ.zero()
        return RatFuncQ(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, int):
            other = RatFuncQ.from_int(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero RatFuncQ")
        if self.num.is_zero():
            return RatFuncQ.zero()
        return RatFuncQ(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFuncQ.from_int(other) / self

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        out = RatFuncQ.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inv(self):
        return RatFuncQ.one() / self

    # -- involutions and evaluation ------------------------------------------

    def bar(self):
        """The field involution q^(1/2) -> q^(-1/2)."""
        return RatFuncQ(self.num.bar(), self.den.bar())

    def is_bar_invariant(self):
        return self.bar() == self

    def specialize(self, spec):
        d = self.den.specialize(spec)
        if d % spec.prime == 0:
            raise BadEvaluationPointError(
                f"denominator vanishes at q={spec.qval} mod {spec.prime}"
            )
        n = self.num.specialize(spec)
        return (n * pow(d, -1, spec.prime)) % spec.prime

    # -- positivity-style inspection ------------------------------------------

    def monomial_denominator(self):
        """If the value is q^(a/2) * f(q^(1/2)) with f a Laurent polynomial,
        return (a2, f) where a2 is irrelevant here: concretely, when the
        canonical denominator is a constant c, return the numerator scaled
        test pair (c, num); otherwise None."""
        if len(self.den.terms) == 1 and 0 in self.den.terms:
            return self.den.terms[0], self.num
        return None

    def is_laurent_with_nonneg_coeffs(self):
        """True iff the value equals q^(a/2) * (polynomial with nonnegative
        integer coefficients)."""
        mono = self.monomial_denominator()
        if mono is None:
            return False
        c, num = mono
        if c < 0:
            return False
        return all(v % c == 0 and v >= 0 for v in num.terms.values())

    # -- serialization --------------------------------------------------------

    def serialize(self):
        """Text form ``num;den``, each a comma list of ``2e:c`` pairs."""

        def side(p):
            if not p.terms:
                return "0:0"
            return ",".join(f"{e}:{p.terms[e]}" for e in sorted(p.terms))

        return f"{side(self.num)};{side(self.den)}"

    @classmethod
    def parse(cls, text):
        def side(s):
            terms = {}
            for item in s.split(","):
                e, c = item.split(":")
                if int(c):
                    terms[int(e)] = int(c)
            return HalfLaurentPoly(terms, _clean=False)

        ntext, dtext = text.split(";")
        return cls(side(ntext), side(dtext))

    def __repr__(self):
        if self.den.terms == {0: 1}:
            return f"({self.num})"
        return f"({self.num}) / ({self.den})"


# ---------------------------------------------------------------------------
# Modular points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModSpec:
    """An evaluation point: a prime and a nonzero residue for q.

    ``sqrt_qval`` must square to ``qval`` mod ``prime``; it is required only
    when a value with half-integer exponents is specialized.
    """

    prime: int
    qval: int
    sqrt_qval: int = None

    def __post_init__(self):
        if self.qval % self.prime == 0:
            raise ValueError("qval must be nonzero mod prime")
        if self.sqrt_qval is not None:
            if (self.sqrt_qval * self.sqrt_qval - self.qval) % self.prime:
                raise ValueError("sqrt_qval^2 != qval mod prime")

    @property
    def qval_inv(self):
        return pow(self.qval, -1, self.prime)

    @property
    def sqrt_qval_inv(self):
        return pow(self.sqrt_qval, -1, self.prime)

    @classmethod
    def from_sqrt(cls, prime, sqrt_qval):
        return cls(prime, (sqrt_qval * sqrt_qval) % prime, sqrt_qval % prime)


def default_points(n, primes=PRIMES[:2], skip=0):
    """A deterministic supply of evaluation points, n per prime.

    Points are built from small square roots s = 3, 5, 7, ... so q = s^2 is
    guaranteed to have a square root; q is never 0 or 1.
    """
    pts = []
    for prime in primes:
        roots, s = [], 3
        while len(roots) < n + skip:
            roots.append(s)
            s += 2
        pts.extend(ModSpec.from_sqrt(prime, r) for r in roots[skip:])
    return pts


# ---------------------------------------------------------------------------
# Rational function reconstruction
# ---------------------------------------------------------------------------


def _poly_mod_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _dense_trim(out)


def _poly_mod_divmod(a, b, p):
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    quo = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and any(a):
        da = len(a) - 1
        c = (a[-1] * inv) % p
        quo[da - db] = c
        for i, bc in enumerate(b):
            a[da - db + i] = (a[da - db + i] - c * bc) % p
        _dense_trim(a)
    return _dense_trim(quo), a


def _interp_poly(xs, ys, p):
    """Lagrange interpolation in F_p[x] (dense, lowest degree first)."""
    n = len(xs)
    master = [1]
    for x in xs:
        master = _poly_mod_mul(master, [(-x) % p, 1], p)
    out = [0] * n
    for i in range(n):
        numi, _ = _poly_mod_divmod(master, [(-xs[i]) % p, 1], p)
        denom = 1
        for j in range(n):
            if j != i:
                denom = (denom * (xs[i] - xs[j])) % p
        scale = (ys[i] * pow(denom, -1, p)) % p
        for k, c in enumerate(numi):
            out[k] = (out[k] + scale * c) % p
    return _dense_trim(out)


def _cauchy_interp(xs, ys, dn, dd, p):
    """Rational interpolation: find N/D with deg N <= dn, deg D <= dd and
    N(x_k) = y_k D(x_k) for all k, via the extended Euclidean scheme on
    (master, interpolant).  Returns (N, D) with D monic, or None."""
    master = [1]
    for x in xs:
        master = _poly_mod_mul(master, [(-x) % p, 1], p)
    f = _interp_poly(xs, ys, p)
    r0, r1 = master, f
    t0, t1 = [], [1]
    while r1 and len(r1) - 1 > dn:
        q, r = _poly_mod_divmod(r0, r1, p)
        r0, r1 = r1, r
        t0, t1 = t1, _dense_trim(
            [
                (t0[i] if i < len(t0) else 0) - c
                for i, c in enumerate(_poly_mod_mul(q, t1, p) + [0] * len(t0))
            ]
        )
        t1 = [c % p for c in t1]
    num, den = r1, t1
    if not den or len(den) - 1 > dd:
        return None
    # cancel common factors and normalize monic
    g = _poly_gcd_mod(num, den, p)
    if len(g) > 1:
        num, _ = _poly_mod_divmod(num, g, p)
        den, _ = _poly_mod_divmod(den, g, p)
    if not den:
        return None
    inv = pow(den[-1], -1, p)
    num = [(c * inv) % p for c in num]
    den = [(c * inv) % p for c in den]
    # every sample point must be a regular point of the result
    for x, y in zip(xs, ys):
        dv = _poly_eval_mod(den, x, p)
        if dv == 0 or (_poly_eval_mod(num, x, p) - y * dv) % p:
            return None
    return num, den


def _poly_eval_mod(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def _poly_gcd_mod(a, b, p):
    a, b = list(a), list(b)
    while b:
        _, r = _poly_mod_divmod(a, b, p)
        a, b = b, r
    if a:
        inv = pow(a[-1], -1, p)
        a = [(c * inv) % p for c in a]
    return a


def rational_reconstruct(u, m):
    """Recover a/b from u mod m with |a|, b <= sqrt(m/2); None on failure."""
    u %= m
    r0, r1 = m, u
    s0, s1 = 0, 1
    bound = _isqrt(m // 2)
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if r1 > bound or s1 == 0 or abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        return None
    if s1 < 0:
        return -r1, -s1
    return r1, s1


def _isqrt(n):
    x = int(n ** 0.5) + 2
    while x * x > n:
        x = (x + n // x) // 2
    while (x + 1) * (x + 1) <= n:
        x += 1
    return x


def _crt(pairs):
    """pairs: list of (residue, modulus) -> (residue, modulus)."""
    r, m = pairs[0]
    for r2, m2 in pairs[1:]:
        inv = pow(m % m2, -1, m2)
        r = r + m * (((r2 - r) * inv) % m2)
        m = m * m2
        r %= m
    return r, m


def reconstruct(samples, degree_bound):
    """Reconstruct a RatFuncQ in integer powers of q from modular samples.

    samples: iterable of (ModSpec, residue).  At least two distinct primes
    are required.  degree_bound = (dn, dd) bounds the numerator/denominator
    degrees (the function is allowed to be a Laurent fraction; bounds apply
    to the polynomial form).  The result is re-verified against every
    sample; a mismatch raises ReconstructionError with the witness sample.
    """
    dn, dd = degree_bound
    by_prime = {}
    for spec, res in samples:
        by_prime.setdefault(spec.prime, []).append((spec, res % spec.prime))
    if len(by_prime) < 2:
        raise ReconstructionError("need samples from at least two primes")
    fits = {}
    for p, pts in by_prime.items():
        seen = {}
        for spec, res in pts:
            if spec.qval in seen and seen[spec.qval] != res:
                raise ReconstructionError(
                    "inconsistent residues at one point", witness=(spec, res)
                )
            seen[spec.qval] = res
        xs = sorted(seen)
        ys = [seen[x] for x in xs]
        if len(xs) < dn + dd + 2:
            raise ReconstructionError(
                f"not enough points mod {p}: {len(xs)} < {dn + dd + 2}"
            )
        fit = _cauchy_interp(xs, ys, dn, dd, p)
        if fit is None:
            raise ReconstructionError(f"no rational fit of degree ({dn},{dd}) mod {p}")
        fits[p] = fit
    # align shapes across primes, then CRT coefficientwise
    shapes = {(len(n), len(d)) for n, d in fits.values()}
    if len(shapes) != 1:
        raise ReconstructionError(f"fit degrees disagree across primes: {shapes}")
    ln, ld = shapes.pop()
    num_q, den_q = [], []
    primes = sorted(fits)
    modulus = 1
    for p in primes:
        modulus *= p
    for i in range(ln):
        r, m = _crt([(fits[p][0][i] if i < len(fits[p][0]) else 0, p) for p in primes])
        rr = rational_reconstruct(r, m)
        if rr is None:
            raise ReconstructionError(f"numerator coefficient {i} fails CRT lift")
        num_q.append(rr)
    for i in range(ld):
        r, m = _crt([(fits[p][1][i] if i < len(fits[p][1]) else 0, p) for p in primes])
        rr = rational_reconstruct(r, m)
        if rr is None:
            raise ReconstructionError(f"denominator coefficient {i} fails CRT lift")
        den_q.append(rr)
    # clear rational denominators
    lcm = 1
    for _, b in num_q + den_q:
        lcm = lcm * b // gcd(lcm, b)
    nums = [a * (lcm // b) for a, b in num_q]
    dens = [a * (lcm // b) for a, b in den_q]
    result = RatFuncQ.from_q_coeffs(nums, dens)
    for spec, res in samples:
        if result.specialize(spec) != res % spec.prime:
            raise ReconstructionError(
                "reconstructed function fails a sample", witness=(spec, res)
            )
    return result
