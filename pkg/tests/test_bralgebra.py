"""The commutant algebra: generation, rank-3 structure, relations,
semisimplicity, canonical basis."""

from fractions import Fraction
from itertools import permutations
from pathlib import Path

import pytest

from qkron.bralgebra import (NotReducibleError, TensorHeckeElt, b3_constants,
                             b3_idempotents, b3_structure, canonical_basis_b3,
                             decompose_regular, find_relation,
                             generate_subalgebra, gens, monomial,
                             semisimplicity_gram, verify_b3_identity)
from qkron.coeffs import ModSpec, PRIMES, RatFuncQ, default_points
from qkron.linalg import EXACT

DATA = Path(__file__).parent / "data"
P = RatFuncQ.from_q_coeffs


def test_generators_idempotent_and_scaled_square():
    g = gens(2)[0]
    assert g * g == g
    gs = gens(2, scaled=True)[0]
    k = b3_constants()
    assert gs * gs == gs.scale(k["f"])


def test_generator_symmetries():
    for g in gens(3):
        assert g.swap() == g
        assert g.map_components("theta", "theta") == g
        assert g.map_components("iota", "iota",
                                conj=lambda c: c.bar()) == g
        assert g.map_components("theta") == TensorHeckeElt.one(3) - g


def test_b2_exact():
    b = generate_subalgebra(2, mode="exact")
    assert b.dim == 2 and b.top_degree == 1
    assert b.words == [(), (1,)]


def test_b3_exact_and_modular_agree():
    exact = generate_subalgebra(3, mode="exact")
    assert exact.dim == 10 and exact.top_degree == 5
    modular = generate_subalgebra(3, points=default_points(1, PRIMES[:2]))
    assert modular.words == exact.words
    assert modular.to_json()["dim"] == 10


def test_b3_identity_suite():
    rep = verify_b3_identity()
    assert rep["identity"]
    assert rep["sigma_p1"] and rep["sigma_p2"]
    assert rep["negative_control_fails"]


def _s3_group_algebra_identity():
    """Brute-force oracle at q = 1: both sides of the degree-5 identity in
    the rational group algebra of S_3 x S_3 (36-dim, Fraction arithmetic)."""
    perms = list(permutations((1, 2, 3)))

    def compose(u, v):  # (u * v)(i) = u(v(i))
        return tuple(u[v[i] - 1] for i in range(3))

    def s(i):
        v = [1, 2, 3]
        v[i - 1], v[i] = v[i], v[i - 1]
        return tuple(v)

    e = (1, 2, 3)

    def alg_mul(a, b):
        out = {}
        for (u1, u2), c1 in a.items():
            for (v1, v2), c2 in b.items():
                k = (compose(u1, v1), compose(u2, v2))
                out[k] = out.get(k, Fraction(0)) + c1 * c2
        return {k: c for k, c in out.items() if c}

    def scale(a, c):
        return {k: v * c for k, v in a.items()}

    def add(a, b):
        out = dict(a)
        for k, c in b.items():
            out[k] = out.get(k, Fraction(0)) + c
            if not out[k]:
                del out[k]
        return out

    def p_tensor(i):
        # (s_i + e)/2 (x) (s_i + e)/2 + (s_i - e stuff): p (x) p + q (x) q
        half = Fraction(1, 2)
        p = {(s(i), s(i)): half * half, (s(i), e): half * half,
             (e, s(i)): half * half, (e, e): half * half}
        q = {(s(i), s(i)): half * half, (s(i), e): -half * half,
             (e, s(i)): -half * half, (e, e): half * half}
        return scale(add(p, q), Fraction(4))  # scaled generator at q = 1

    p1, p2 = p_tensor(1), p_tensor(2)
    c1, c2 = Fraction(16), Fraction(8)

    def word(*gens_):
        out = {(e, e): Fraction(1)}
        for g in gens_:
            out = alg_mul(out, g)
        return out

    lhs = add(add(scale(word(p1), c1), scale(word(p1, p2, p1), -c2)),
              word(p1, p2, p1, p2, p1))
    rhs = add(add(scale(word(p2), c1), scale(word(p2, p1, p2), -c2)),
              word(p2, p1, p2, p1, p2))
    return lhs, rhs


def test_b3_identity_q1_oracle():
    lhs, rhs = _s3_group_algebra_identity()
    assert lhs == rhs
    # and the exact Sigma specializes to the same element at q = 1
    sigma = verify_b3_identity()["sigma"]
    spec = ModSpec(PRIMES[0], 1, 1)
    p = PRIMES[0]
    for (u, v), c in sigma.coeffs.items():
        frac = lhs.get((u, v), Fraction(0))
        expected = (frac.numerator * pow(frac.denominator, -1, p)) % p
        assert c.specialize(spec) == expected


def test_b3_structure_tables():
    rep = b3_structure()
    assert rep["table_ok"], rep["table_diffs"]
    assert rep["quadratic_roots_ok"]
    assert rep["gamma_split_ok"]
    assert rep["mu_annihilated"]
    assert rep["dims_multiplicities"] == [("sigma", 1, 1), ("chi1", 2, 2),
                                          ("chi2", 2, 2), ("mu", 1, 1)]


def test_printed_theta_value_is_falsified():
    """The published Sigma-coefficient of the vanishing element (-alpha)
    does not annihilate; the corrected value -alpha/f does (see the
    structure suite).  Keep the falsification pinned."""
    f = EXACT
    k = b3_constants()
    st = b3_structure()
    mu = st["mu"]
    sigma = st["sigma"]
    p1 = monomial((1,), 3, scaled=True)
    # replace the corrected Sigma coefficient by the printed one
    bad = mu + sigma.scale(f.sub(f.neg(k["alpha"]),
                                 f.neg(f.div(k["alpha"], k["f"]))))
    assert not (bad * p1).is_zero()


def test_b4_dimension_and_top_degree():
    basis = generate_subalgebra(4, points=default_points(1, PRIMES[:2]))
    assert basis.dim == 114
    assert basis.top_degree == 9


def test_gram_small_ranks():
    assert semisimplicity_gram(2)["gram_rank"] == 2
    rep = semisimplicity_gram(3)
    assert rep["gram_rank"] == 10 and rep["semisimple"]


def test_wedderburn_r2_r3():
    assert decompose_regular(2)["blocks"] == [1, 1]
    rep = decompose_regular(3)
    assert rep["blocks"] == [1, 1, 2, 2]
    assert rep["sum_of_squares"] == 10


def test_b3_idempotents_exact():
    idems = b3_idempotents()
    assert set(idems) == {"sigma", "chi1", "chi2", "mu"}
    total = TensorHeckeElt.zero(3)
    for e in idems.values():
        assert e * e == e
        total = total + e
    assert total == TensorHeckeElt.one(3)
    for a in idems.values():
        for b in idems.values():
            if a is not b:
                assert (a * b).is_zero()


def test_find_relation_not_reducible():
    with pytest.raises(NotReducibleError):
        find_relation((1, 2, 1), 3, points_per_prime=6, degree_bound=(2, 2))


def test_relation_spot_rows():
    terms = dict(find_relation((3, 2, 3, 2, 1, 2, 3), 4))
    assert len(terms) == 74
    assert terms[(1, 3, 2, 3, 2)] == P([-9, -6, -55, 12, -55, -6, -9],
                                       [0, 2, 12, 4, 12, 2])
    assert terms[(3, 2, 1, 2, 3)] == RatFuncQ.from_int(4)
    assert all(c.is_bar_invariant() for c in terms.values())


def test_canonical_basis_b3():
    rep = canonical_basis_b3()
    assert all(rep["positivity"].values())
    assert all(rep["bar_invariant"].values())
    assert all(rep["left_cell_closure"].values())
    # mu-hat is the unit: coefficient vector e_1
    mu = dict(rep["vectors"]["mu_hat"])
    assert mu[(0, 0)].is_one()
    assert all(c.is_zero() for k, c in mu.items() if k != (0, 0))


def test_canonical_basis_published_tables():
    """All 210 published coefficient-table entries: the 21 x 2 unit/top
    column pair and the two 21 x 4 cell tables (grouped by splitting
    root)."""
    from canonical_b3_tables import SIGMA_COLUMN, V_TABLE, W_TABLE

    rep = canonical_basis_b3()
    pairs = [(i, j) for i in range(6) for j in range(i, 6)]
    sig = dict(rep["vectors"]["sigma_hat"])
    for pair, want in zip(pairs, SIGMA_COLUMN):
        assert sig[pair] == want, pair
    for table, cols in [(V_TABLE, ["g1_a1", "g12_a1", "g2_a1", "g21_a1"]),
                        (W_TABLE, ["g1_a2", "g12_a2", "g2_a2", "g21_a2"])]:
        for cidx, name in enumerate(cols):
            vec = dict(rep["vectors"][name])
            for ridx, pair in enumerate(pairs):
                assert vec[pair] == table[ridx][cidx], (name, ridx + 1)
    assert rep["cells"]["V1"] == ["g1_a1", "g12_a1"]
    assert rep["cells"]["V2"] == ["g2_a1", "g21_a1"]
    assert rep["cells"]["W1"] == ["g1_a2", "g12_a2"]
    assert rep["cells"]["W2"] == ["g2_a2", "g21_a2"]


def test_b3_commutant_multiplicity_bookkeeping():
    """The bimodule bookkeeping 20*1 + 4*1 + 16*2 + 4*2 = 64."""
    from qkron.qmatrix import degree3_decomposition

    rep = degree3_decomposition((2, 2))
    assert rep["bimodule_dimension"] == 64
    assert sorted(rep["glq_dims"], reverse=True) == [20, 16, 4, 4]


def test_echelon_basis_json():
    basis = generate_subalgebra(3, points=default_points(1, PRIMES[:2]))
    payload = basis.to_json()
    assert payload["dim"] == 10
    assert payload["words"][0] == ""
    assert payload["mode"] == "modular"
    assert len(payload["points"]) == 2


def test_q_complement_generator():
    """p (x) q + q (x) p is the complement 1 - P_i."""
    p = derived_generator_local("p", 1)
    qq = derived_generator_local("q", 1)
    qi = tensor_local(p, qq) + tensor_local(qq, p)
    assert qi == TensorHeckeElt.one(3) - gens(3)[0]


def derived_generator_local(kind, i):
    from qkron.hecke import derived_generator

    return derived_generator(kind, i, 3)


def tensor_local(a, b):
    from qkron.bralgebra import tensor

    return tensor(a, b)


def test_q1_degeneration_span_is_group_algebra():
    """At q = 1 the ten monomial images span only the diagonal group
    algebra: rank 6."""
    import numpy as np
    from qkron._kernels import DenseEchelon
    from qkron.bralgebra import _ModularRun

    spec = ModSpec(PRIMES[0], 1, 1)
    run = _ModularRun(3, spec)
    words = [(), (1,), (2,), (1, 2), (2, 1), (1, 2, 1), (2, 1, 2),
             (1, 2, 1, 2), (2, 1, 2, 1), (1, 2, 1, 2, 1)]
    ech = DenseEchelon(run.ncols, PRIMES[0])
    rank = 0
    for w in words:
        if ech.insert(run.word_vec(w)) is not None:
            rank += 1
    assert rank == 6


def test_desk_scale_guards():
    with pytest.raises(ValueError):
        generate_subalgebra(6)
    with pytest.raises(ValueError):
        semisimplicity_gram(5)
    with pytest.raises(ValueError):
        decompose_regular(5)
