"""Normal-ordered arithmetic in A(n,m) against the single-swap oracle."""

import math
from fractions import Fraction
from random import Random

import pytest

from lndcalc import (
    CapExceededError,
    LndError,
    SignatureMismatchError,
    WeylElement,
    WeylSignature,
    apply_pd_multi,
    central_to_commpoly,
    commpoly_to_central,
    parse_comm,
    parse_weyl,
    weyl_ad,
    weyl_mul,
)
from oracle_weyl import oracle_mul
from support import random_weyl

A10 = WeylSignature(1, 0)
A11 = WeylSignature(1, 1)
A21 = WeylSignature(2, 1)


def _gen(sig, i):
    return WeylElement.generator(sig, i)


def test_signature_requires_a_generator():
    with pytest.raises(LndError):
        WeylSignature(0, 0)
    assert WeylSignature(0, 1).s == 1
    assert WeylSignature(2, 1).s == 5
    assert str(WeylSignature(1, 2)) == "A(1,2)"


def test_mul_examples():
    x1, x2 = _gen(A10, 0), _gen(A10, 1)
    assert weyl_mul(x2, x1) == parse_weyl("x1*x2 + 1", A10)
    a = parse_weyl("x1^2*x2 + 3/2", A10)
    assert weyl_mul(WeylElement.one(A10), a) == a
    assert weyl_mul(x2 * x2, x1 * x1) == parse_weyl("x1^2*x2^2 + 4*x1*x2 + 2", A10)


def test_closed_form_matches_swap_oracle_for_all_pairs_up_to_5():
    for a in range(6):
        for b in range(6):
            p = WeylElement.monomial(A10, (0, a))
            q = WeylElement.monomial(A10, (b, 0))
            got = weyl_mul(p, q)
            assert got == oracle_mul(p, q)
            # the explicit sum: p^a q^b = sum_j j! C(a,j) C(b,j) q^(b-j) p^(a-j)
            expected = WeylElement.zero(A10)
            for j in range(min(a, b) + 1):
                coeff = math.factorial(j) * math.comb(a, j) * math.comb(b, j)
                expected = expected + WeylElement.monomial(A10, (b - j, a - j), coeff)
            assert got == expected


def test_mul_matches_oracle_on_random_elements():
    rng = Random(201)
    for sig in (A10, A11, A21):
        for _ in range(12):
            a = random_weyl(rng, sig, 3, 3)
            b = random_weyl(rng, sig, 3, 3)
            assert weyl_mul(a, b) == oracle_mul(a, b)


def test_defining_relations_exhaustively():
    for sig in (A10, A11, A21):
        n, s = sig.n, sig.s
        for i in range(s):
            for j in range(s):
                bracket = weyl_ad(_gen(sig, i), _gen(sig, j))
                if i < 2 * n and j < 2 * n and i == j + n:
                    assert bracket == WeylElement.one(sig), (i, j)
                elif i < 2 * n and j < 2 * n and j == i + n:
                    assert bracket == -WeylElement.one(sig), (i, j)
                else:
                    # same block, or at least one central variable: commute
                    assert bracket.is_zero(), (i, j)


def test_mul_is_associative_on_random_triples():
    rng = Random(202)
    for _ in range(100):
        a = random_weyl(rng, A10, 4, 2)
        b = random_weyl(rng, A10, 4, 2)
        c = random_weyl(rng, A10, 4, 2)
        assert weyl_mul(weyl_mul(a, b), c) == weyl_mul(a, weyl_mul(b, c))


def test_partial_examples():
    a = parse_weyl("x1*x2", A10)
    assert a.partial(0) == _gen(A10, 1)
    assert a.partial(1) == _gen(A10, 0)
    # differentiating the normal-ordered form of x2*x1
    b = weyl_mul(_gen(A10, 1), _gen(A10, 0))
    assert b == parse_weyl("x1*x2 + 1", A10)
    assert b.partial(0) == _gen(A10, 1)


def test_partial_out_of_range():
    with pytest.raises(IndexError):
        _gen(A10, 0).partial(2)


def test_ad_examples():
    x1, x2 = _gen(A10, 0), _gen(A10, 1)
    assert weyl_ad(x2, x1) == WeylElement.one(A10)
    u = parse_weyl("x1^2*x2 + x2", A10)
    assert weyl_ad(u, u).is_zero()
    assert weyl_ad(x1 * x1, x2) == parse_weyl("-2*x1", A10)


def test_ad_and_power_rule_partials_agree_on_monomials():
    from lndcalc.multiindex import iter_upto

    for alpha in iter_upto(A11.s, 6):
        mono = WeylElement.monomial(A11, alpha)
        for i in range(A11.s):
            assert mono.partial(i) == mono.partial_via_ad(i), (alpha, i)


def test_leibniz_for_partials():
    rng = Random(203)
    for _ in range(20):
        a = random_weyl(rng, A11, 3, 3)
        b = random_weyl(rng, A11, 3, 3)
        for i in range(A11.s):
            lhs = weyl_mul(a, b).partial(i)
            rhs = weyl_mul(a.partial(i), b) + weyl_mul(a, b.partial(i))
            assert lhs == rhs


def test_multi_partial_examples():
    a = parse_weyl("x1^2*x2", A10)
    assert apply_pd_multi(a, (0, 0)) == a
    assert apply_pd_multi(a, (2, 0), divide=True) == _gen(A10, 1)
    assert apply_pd_multi(parse_weyl("x1*x2", A10), (1, 1), divide=True) == \
        WeylElement.one(A10)


def test_multi_partial_order_is_irrelevant():
    rng = Random(204)
    for _ in range(10):
        a = random_weyl(rng, A11, 4, 3)
        left = apply_pd_multi(a, (1, 2, 1))
        right = a
        for i in (2, 1, 1, 0):  # apply in a scrambled order
            right = right.partial(i)
        assert left == right


def test_central_variables_are_central():
    x3 = _gen(A11, 2)
    rng = Random(205)
    for _ in range(10):
        a = random_weyl(rng, A11, 3, 3)
        assert weyl_ad(x3, a).is_zero()
    assert _gen(A11, 2).is_central()
    assert not _gen(A11, 0).is_central()
    assert parse_weyl("x3^2 + 1/2", A11).is_central()


def test_central_commpoly_round_trip():
    a = parse_weyl("x3^2 + 2*x3 + 1", A11)
    p = central_to_commpoly(a)
    assert p == parse_comm("x1^2 + 2*x1 + 1", 1)
    assert commpoly_to_central(p, A11) == a
    with pytest.raises(LndError):
        central_to_commpoly(parse_weyl("x1", A11))


def test_degree_cap():
    big = WeylElement.monomial(A10, (33, 0))
    with pytest.raises(CapExceededError):
        weyl_mul(big, big)
    # explicit higher cap lets the product through
    assert weyl_mul(big, big, degree_cap=128) == WeylElement.monomial(A10, (66, 0))


def test_signature_mismatch():
    with pytest.raises(SignatureMismatchError):
        weyl_mul(_gen(A10, 0), _gen(A11, 0))


def test_text_form():
    assert str(WeylElement.zero(A10)) == "0"
    assert str(weyl_mul(_gen(A10, 1), _gen(A10, 0))) == "x1*x2 + 1"
    assert str(parse_weyl("3/2*x1^2", A10)) == "3/2*x1^2"
