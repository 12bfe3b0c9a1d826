from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ratknot.algebra import FieldElem, substitute
from ratknot.cfalgebra import ContinuedFraction, ExtendedRational, eval_cf
from ratknot.errors import InvalidCF, NotCoprime
from ratknot.fpoly import FIELD_VARS, T_VARS, w_field
from ratknot.invariants import (
    MFactor,
    alexander,
    alexander_from_homfly,
    alexander_via_corollary,
    extension_identity_holds,
    homfly,
    homfly_oracle,
    homfly_theorem,
    invert_t,
    jones,
    jones_from_homfly,
    jones_via_specialization,
    m_factor,
    oracle_prefixes,
    two_unlink_homfly,
    unit_equivalent,
)

CF = ContinuedFraction
R = ExtendedRational
V = FIELD_VARS

L = FieldElem.var("l", V)
S = FieldElem.var("s", V)
ONE = FieldElem.const(1, V)

even_cfs = st.lists(st.sampled_from((-6, -4, -2, 2, 4, 6)), min_size=1, max_size=5).map(
    lambda t: CF(tuple(t))
)


def t(k, c=1):
    """``c * t^(k/2)``."""
    return FieldElem.monomial((k,), c, T_VARS)


# -- m-factor ----------------------------------------------------------------------


def test_m_factor_examples():
    assert m_factor(CF(())).value == ONE
    assert m_factor(CF((2,))) == MFactor(-1, -3, -1, 1)
    assert m_factor(CF((2,))).value == -(L**-3) * S.inverse() * w_field()
    assert m_factor(CF((-2,))).value == -L * S
    assert m_factor(CF.minus_one()).value == -L.inverse() * S.inverse() * w_field()
    with pytest.raises(InvalidCF):
        m_factor(CF((2, 3)))


def test_m_factor_decomposition():
    m = m_factor(CF((2,)))
    assert m.decomposition == (-1, -3, Fraction(-1, 2), 1)


@given(even_cfs)
def test_m_factor_shape(cf):
    m = m_factor(cf)
    assert m.c0 in (1, -1)
    assert m.e_w in (-1, 0, 1)
    assert m.value == FieldElem.monomial((m.e_l, m.e_s), m.c0, V) * w_field() ** m.e_w
    # w -> 1 at the Jones point, so m becomes a signed monomial
    sign, e = m.at_jones()
    assert substitute(m.value, {"l": t(-2), "q": t(2)}) == t(e, sign)
    sign, e = m.at_alexander()
    assert substitute(m.value, {"l": t(0), "q": t(2)}) == t(e, sign)


def test_m_factor_shortcut_identity():
    # for t_{n-1} = -1, t_n = 1 the recursion skips a step: m_0 = l^(-|b_n|) m_2
    for terms in [(2, 2, 2), (-2, -4), (4, 2, 6), (2, -2, -2, -4)]:
        cf = CF(terms)
        ts = cf.types
        n = len(cf)
        if ts[n - 1] == -1 and ts[n] == 1:
            m0, m2 = m_factor(cf).value, m_factor(cf.prefix(n - 2)).value
            assert m0 == L ** -abs(cf[n - 1]) * m2


# -- the two HOMFLY routes ------------------------------------------------------------


def test_homfly_base_cases():
    w = w_field()
    assert homfly_theorem(CF(())) == ONE
    assert homfly_oracle(CF(())) == ONE
    assert homfly_oracle(CF.minus_one()) == (L - L.inverse()) / (S - S.inverse())
    assert homfly_theorem(CF((2,))) == -(L**-3) * S.inverse() * (w + L**2)
    assert homfly_theorem(CF((-2,))) == -L * S * (ONE + S**-4 * w)
    assert homfly_theorem(CF((2,))) == homfly_oracle(CF((2,)))
    assert homfly_theorem(CF((-2,))) == homfly_oracle(CF((-2,)))


def test_oracle_prefixes():
    cf = CF((2, -4, 2))
    pre = oracle_prefixes(cf)
    assert len(pre) == len(cf) + 2
    for k in range(len(cf) + 1):
        assert pre[k + 1] == homfly_oracle(cf.prefix(k))


def test_homfly_dispatch():
    assert homfly(R(1, 0)) == ONE
    assert homfly(R(0, 1)) == two_unlink_homfly()
    assert homfly(R(5, 2)) == homfly_theorem(CF((2, 2))) == homfly_oracle(CF((2, 2)))
    assert homfly(R(5, 2), "oracle") == homfly(R(5, 2), "skein") == homfly(R(5, 2))
    with pytest.raises(ValueError):
        homfly(R(5, 2), "nope")
    with pytest.raises(NotCoprime):
        homfly(R(4, 2))


@settings(max_examples=60, deadline=None)
@given(even_cfs)
def test_theorem_equals_oracle(cf):
    assert homfly_theorem(cf) == homfly_oracle(cf)


@settings(max_examples=40, deadline=None)
@given(even_cfs)
def test_extension_identity(cf):
    assert extension_identity_holds(cf)


def test_extension_identity_one_term():
    # P[b + 2] = l^(-2 t) P[b] + t l^(-t) (s - s^-1) P[], written out by hand
    for b in (2, 4, 6):
        p0 = homfly_oracle(CF((b + 2,)))
        p2 = homfly_oracle(CF((b,)))
        p1 = homfly_oracle(CF(()))
        t1 = CF((b,)).types[1]
        rhs = FieldElem.monomial((-2 * t1, 0), 1, V) * p2 + FieldElem.monomial((-t1, 0), t1, V) * (S - S.inverse()) * p1
        assert p0 == rhs


# -- Jones and Alexander -------------------------------------------------------------


def test_named_alexander():
    assert unit_equivalent(alexander(R(3, 1)), t(2) - t(0) + t(-2))
    assert unit_equivalent(alexander(R(5, 2)), -t(2) + 3 * t(0) - t(-2))
    assert alexander(R(0, 1)).is_zero()
    assert alexander(R(1, 0)) == t(0)


def test_named_jones():
    assert jones(R(5, 2)) == t(4) - t(2) + t(0) - t(-2) + t(-4)
    assert jones(R(0, 1)) == -(t(1) + t(-1))
    trefoil = jones(R(3, 1))
    right = t(2) + t(6) - t(8)
    assert trefoil == right or trefoil == invert_t(right)


def test_jones_at_t_equals_one():
    # V(1) = (-2)^(components - 1)
    for r in (R(3, 1), R(5, 2), R(7, 3), R(4, 1), R(8, 3), R(9, 2)):
        x = jones(r)
        value = x.num.evaluate({"u": 1})
        comps = 2 if r.p % 2 == 0 else 1
        assert value == (-2) ** (comps - 1)


def test_alexander_of_knot_at_one():
    for p in range(3, 30, 2):
        for q in range(1, p):
            if gcd(p, q) != 1:
                continue
            a = alexander(R(p, q))
            assert abs(a.num.evaluate({"u": 1})) == 1
            # |Delta(-1)| is the determinant p
            assert abs(a.num.evaluate({"u": 1j})) == p


def test_substitution_helpers():
    h = two_unlink_homfly()
    assert jones_from_homfly(h) == -(t(1) + t(-1))
    assert alexander_from_homfly(h).is_zero()


@settings(max_examples=40, deadline=None)
@given(even_cfs)
def test_corollary_route(cf):
    got = alexander_via_corollary(cf)
    want = alexander(eval_cf(cf))
    assert got == want
    if not want.is_zero():
        assert unit_equivalent(want, invert_t(want))


def test_corollary_examples():
    assert alexander_via_corollary(CF((2, 2))) == alexander(R(5, 2))
    assert alexander_via_corollary(CF((-2, 2))) == alexander(R(3, -2))
    assert alexander_via_corollary(CF(())) == t(0)


@settings(max_examples=40, deadline=None)
@given(even_cfs)
def test_jones_via_specialization(cf):
    assert jones_via_specialization(cf) == jones_from_homfly(homfly_theorem(cf))


def test_unit_equivalent():
    a = t(2) - t(0)
    assert unit_equivalent(a, t(-6, -1) * a)
    assert not unit_equivalent(a, 2 * a)
    assert not unit_equivalent(a, t(0))
    assert unit_equivalent(t(0, 0), t(0, 0))
