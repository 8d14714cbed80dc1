"""The rewrite engine: normal forms, confluence, graded dimensions,
membership, and the two concrete reduction systems."""

import random

import pytest

from qkron.coeffs import PRIMES, RatFuncQ, default_points
from qkron.linalg import EXACT
from qkron.ncreduce import (FreeElt, NonTerminatingError, ReductionRule,
                            ReductionSystem, appendix_system, deglex_key,
                            diamond_check, emit_rules, graded_quotient_dim,
                            ideal_member, normal_form, parse_rules,
                            quotient_beta_element, quotient_system, reduce_at)
from qkron.qmatrix import algebra_spec, matrix_bialgebra_relations, z_letters

P = RatFuncQ.from_q_coeffs
F = EXACT

LETTERS = z_letters(2, 2)
LIDX = {t: i for i, t in enumerate(LETTERS)}


def zword(*labels):
    return tuple(LIDX[tuple(int(ch) for ch in lab)] for lab in labels)


def test_classical_rule_u21_u11():
    # generators u_(i,j) on a 2x2 grid, lex order; u21 u11 -> 1/q u11 u21
    sys2 = algebra_spec("omq_v", (2, 2)).system
    e = FreeElt.monomial(4, (2, 0))  # u21 u11 (0-based: (1,0) then (0,0))
    nf = normal_form(e, sys2)
    assert nf.coeffs == {(0, 2): F.inv(F.q)}


def test_standard_monomial_is_fixed():
    sys2 = algebra_spec("omq_v", (2, 2)).system
    e = FreeElt.monomial(4, (0, 1, 3))
    assert normal_form(e, sys2) == e


def test_normal_form_idempotent_and_strategy_free_on_confluent():
    rng = random.Random(41)
    for name in ("omq_v", "sym", "wedge"):
        system = algebra_spec(name, (2, 2)).system
        n = 4
        for _ in range(10):
            word = tuple(rng.randrange(n) for _ in range(4))
            e = FreeElt.monomial(n, word)
            left = normal_form(e, system, "leftmost")
            right = normal_form(e, system, "rightmost")
            assert left == right
            assert normal_form(left, system) == left


def test_diamond_confluent_systems():
    for name, dims in [("omq_v", (2, 2)), ("omq_v", (3, 3)),
                       ("sym", (2, 2)), ("sym", (2, 3)),
                       ("wedge", (2, 2)), ("wedge", (3, 2))]:
        verdict, ce = diamond_check(algebra_spec(name, dims).system, 3)
        assert verdict == "confluent", (name, dims, ce)


def test_appendix_system_shape():
    system = appendix_system(2, 2)
    assert len(system.rules) == 120
    # every rule: nonstandard LHS, standard RHS words
    for lhs, rhs in system.rules.items():
        assert LETTERS[lhs[0]] < LETTERS[lhs[1]]
        for w in rhs.coeffs:
            assert LETTERS[w[0]] >= LETTERS[w[1]]


def test_appendix_diamond_failure_witness():
    system = appendix_system(2, 2)
    verdict, ce = diamond_check(system, 3)
    assert verdict == "counterexample"
    word, nf1, nf2 = ce
    assert word == zword("1111", "1112", "1221")
    diff = nf1 - nf2
    assert not diff.is_zero()
    assert ideal_member(diff, matrix_bialgebra_relations(2, 2))


def test_appendix_printed_normal_forms():
    system = appendix_system(2, 2)
    mm = FreeElt.monomial(16, zword("1111", "1112", "1221"))
    e = mm
    for pos in (0, 1, 0, 1):
        e = reduce_at(e, system, pos)
    q2p1 = P([1, 0, 1])
    assert e.coeffs == {
        zword("1211", "1121", "1112"): P([-1, 0, 1]),
        zword("1211", "1122", "1111"): P([0, -1, 0, 1]) / q2p1,
        zword("1212", "1121", "1111"): P([-1, 0, 1]) / q2p1,
        zword("1221", "1112", "1111"): P([0, 0, 2]) / q2p1,
        zword("1222", "1111", "1111"): P([0, 1, 0, -1]) / q2p1,
    }
    e2 = mm
    for pos in (1, 0, 1):
        e2 = reduce_at(e2, system, pos)
    assert e2.coeffs == {
        zword("1211", "1121", "1112"): P([1, 0, -3, 0, 1, 0, 1]) / (P([0, 0, 1]) * q2p1),
        zword("1211", "1122", "1111"): P([0, -2, 0, 2]) / (q2p1 * q2p1),
        zword("1221", "1112", "1111"): P([-1, 0, 4, 0, 1]) / (q2p1 * q2p1),
        zword("1212", "1121", "1111"): P([-2, 0, 2]) / (q2p1 * q2p1),
        zword("1222", "1111", "1111"): P([0, 2, 0, -2]) / (q2p1 * q2p1),
    }
    # the full strategies reproduce the two printed forms
    assert normal_form(mm, system, "leftmost") == e
    assert normal_form(mm, system, "rightmost") == e2


def test_quotient_beta_printed_examples():
    p = F.inv(F.q)
    beta = quotient_beta_element((2, 2, 1, 2), (1, 1, 2, 2))
    assert beta.coeffs == {
        zword("2212", "1122"): F.one,
        zword("2222", "1112"): p,
    }
    # the fully reduced rule agrees since the tail is already standard
    system = quotient_system(2, 2)
    assert system.rules[zword("2212", "1122")].coeffs == \
        {zword("2222", "1112"): -p}
    # dims (3,3), built by index compression from the rank-one table
    letters3 = z_letters(3, 3)
    lidx3 = {t: i for i, t in enumerate(letters3)}

    def zw3(*labs):
        return tuple(lidx3[tuple(int(c) for c in lab)] for lab in labs)

    beta3 = quotient_beta_element((1, 3, 1, 3), (3, 2, 2, 3), 3, 3)
    assert beta3.coeffs == {
        zw3("1313", "3223"): F.one,
        zw3("3213", "1323"): F.one,
        zw3("3313", "1223"): F.sub(p, F.q),
    }


def test_quotient_beta_always_in_relation_span():
    from qkron.linalg import Echelon
    from qkron.qmatrix import symmetric_square_ideal

    rels = matrix_bialgebra_relations(2, 2) + symmetric_square_ideal(2, 2)
    ech = Echelon(F, key_rank=lambda w: w)
    for rel in rels:
        ech.insert(dict(rel.coeffs))
    for a in LETTERS:
        for b in LETTERS:
            half = 2
            if a[:half] > b[:half] and a[half:] > b[half:]:
                continue  # standard
            beta = quotient_beta_element(a, b)
            assert ech.contains(dict(beta.coeffs)), (a, b)
            assert beta.coeffs[(LIDX[a], LIDX[b])] == F.one


def test_quotient_standard_count():
    # halves-standard pairs: 6 choices per half, squared
    system = quotient_system(2, 2)
    n_nonstandard = len(system.rules)
    assert 16 * 16 - n_nonstandard == 36


def test_graded_dims_modular_and_exact():
    rels = matrix_bialgebra_relations(2, 2)
    pts = default_points(1, PRIMES[:2])
    assert graded_quotient_dim(16, rels, 2, points=pts) == 136
    assert graded_quotient_dim(16, rels, 3, points=pts) == 688
    assert graded_quotient_dim(16, rels, 2, mode="exact") == 136
    # classical commutative relations on 16 generators, degree 3
    f = EXACT
    classical = []
    for a in range(16):
        for b in range(a + 1, 16):
            classical.append(FreeElt(16, {(a, b): f.one, (b, a): f.neg(f.one)}, f))
    assert graded_quotient_dim(16, classical, 3, points=pts) == 816


def test_ideal_member_basics():
    rels = matrix_bialgebra_relations(2, 2)
    assert ideal_member(rels[0], rels)
    mono = FreeElt.monomial(16, zword("2222", "2221", "2211"))
    assert not ideal_member(mono, rels)


def test_nonterminating_guard():
    f = EXACT
    loop = ReductionSystem(2, [
        ReductionRule((0, 1), FreeElt(2, {(1, 0): f.one}, f)),
        ReductionRule((1, 0), FreeElt(2, {(0, 1): f.one}, f)),
    ], validate=False)
    with pytest.raises(NonTerminatingError):
        normal_form(FreeElt.monomial(2, (0, 1)), loop, fuel=100)


def test_rule_validation():
    f = EXACT
    with pytest.raises(ValueError):
        ReductionSystem(2, [
            ReductionRule((0, 1), FreeElt(2, {(1, 1): f.one}, f)),
        ], word_key=deglex_key)  # (1,1) > (0,1) in deglex


def test_rules_text_roundtrip():
    system = appendix_system(2, 2)
    text = emit_rules(system)
    parsed = parse_rules(text, 16)
    assert set(parsed.rules) == set(system.rules)
    for lhs in system.rules:
        assert parsed.rules[lhs] == system.rules[lhs]


def test_trace():
    system = algebra_spec("omq_v", (2, 2)).system
    e = FreeElt.monomial(4, (2, 0))
    nf, trace = normal_form(e, system, with_trace=True)
    assert len(trace) == 1
    assert trace[0][2] == (2, 0)
