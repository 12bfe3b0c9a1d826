import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ratknot.algebra import FieldElem, MultiPoly
from ratknot.cfalgebra import ContinuedFraction, eval_cf
from ratknot.errors import InvalidCF
from ratknot.fpoly import (
    FIELD_VARS,
    T_VARS,
    FPolynomial,
    Specialization,
    f_poly_brute,
    f_poly_recursive,
    f_segment,
    f_tilde_base_by_steps,
    f_tilde_recursive,
    recursion_coefficients,
    specialize_f,
    specialize_poset,
    w_field,
)
from ratknot.poset import EMPTY_POSET, FinitePoset, poset_from_cf, segment_ideals

CF = ContinuedFraction
V = FIELD_VARS

L = FieldElem.var("l", V)
S = FieldElem.var("s", V)
Q = S**2
ONE = FieldElem.const(1, V)

valid_cfs = (
    st.lists(st.integers(-7, 7).filter(bool), min_size=1, max_size=6)
    .map(lambda t: CF(tuple(t)))
    .filter(lambda cf: cf.is_poset_valid and cf.partial_sums[-1] <= 24)
)
even_cfs = st.lists(st.sampled_from((-6, -4, -2, 2, 4, 6)), min_size=1, max_size=5).map(
    lambda t: CF(tuple(t))
)


def t(k, c=1):
    return FieldElem.monomial((k,), c, T_VARS)


# -- brute force and segments --------------------------------------------------


def test_golden_f22():
    F = f_poly_brute(poset_from_cf(CF((2, 2))))
    assert str(F) == "1 + y1 + y3 + y1*y3 + y1*y2*y3"
    assert F == f_poly_recursive(CF((2, 2)))


def test_brute_small():
    assert str(f_poly_brute(EMPTY_POSET)) == "1"
    diamond = FinitePoset(("a", "b", "c", "d"), (("d", "b"), ("d", "c"), ("b", "a"), ("c", "a")))
    assert str(f_poly_brute(diamond)) == "1 + yd + yb*yd + yc*yd + yb*yc*yd + ya*yb*yc*yd"


def test_f_segment_examples():
    # with |c_1| = 3 the second segment holds labels 4..7, read upward when t_2 = 1
    assert str(f_segment(CF((3, -5)), 2)) == "1 + y4 + y4*y5 + y4*y5*y6 + y4*y5*y6*y7"
    assert str(f_segment(CF((3, 5)), 2)) == "1 + y7 + y6*y7 + y5*y6*y7 + y4*y5*y6*y7"
    assert str(f_segment(CF((2, 1, 1)), 2)) == "1"
    assert str(f_segment(CF((2, 3)), 2)) == "1 + y4 + y3*y4"
    with pytest.raises(IndexError):
        f_segment(CF((2, 3)), 3)
    with pytest.raises(InvalidCF):
        f_segment(CF((2, -1)), 1)


@given(valid_cfs)
def test_f_segment_matches_segment_ideals(cf):
    for m in range(1, len(cf) + 1):
        want = FPolynomial()
        for ideal in segment_ideals(cf, m):
            want = want + FPolynomial.product(ideal)
        assert f_segment(cf, m) == want


# -- the four-case recursion -------------------------------------------------------


def test_recursive_examples():
    assert str(f_poly_recursive(CF((2, -2)))) == "1 + y3 + y1*y3"
    assert str(f_poly_recursive(CF((-2,)))) == "1 + y1"
    assert str(f_poly_recursive(CF(()))) == "1"
    F = f_poly_recursive(CF((2, 3, -4, 2, 3, 1)))
    assert 5 not in F.labels() and 9 not in F.labels()
    with pytest.raises(InvalidCF):
        f_poly_recursive(CF((2, 0)))


@settings(max_examples=150, deadline=None)
@given(valid_cfs)
def test_recursive_equals_brute(cf):
    F = f_poly_recursive(cf)
    assert F == f_poly_brute(poset_from_cf(cf))
    assert F.is_final_form()
    assert F.evaluate() == eval_cf(cf).p
    assert len(F) == eval_cf(cf).p


# -- FPolynomial value type --------------------------------------------------------


def test_fpolynomial_ops():
    a = FPolynomial.one() + FPolynomial.var(1)
    b = FPolynomial.one() + FPolynomial.var(3)
    assert str(a * b) == "1 + y1 + y3 + y1*y3"
    assert str(a - FPolynomial.one()) == "y1"
    assert str(-a) == "-1 - y1"
    assert str(2 * a) == "2 + 2*y1"
    with pytest.raises(ValueError):
        a * a
    assert (a * b).evaluate({1: 2, 3: 5}) == 18
    mp = (a * b).to_multipoly()
    assert mp.vars == ("y1", "y3")
    assert mp == MultiPoly(("y1", "y3"), {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1})
    assert not (a - FPolynomial.one()).is_final_form()


def test_text_order_is_degree_then_index():
    F = FPolynomial.product((2, 5)) + FPolynomial.var(7) + FPolynomial.product((1, 9)) + FPolynomial.one()
    assert str(F) == "1 + y7 + y1*y9 + y2*y5"


# -- specializations --------------------------------------------------------------


def test_specialization_images():
    w = w_field()
    F2 = f_poly_recursive(CF((2,)))
    assert specialize_f(F2, Specialization.homfly(1)) == ONE + L**2 / w
    Fm2 = f_poly_recursive(CF((-2,)))
    assert specialize_f(Fm2, Specialization.homfly(-1)) == ONE + Q ** -2 * w


def test_alexander_specialization_of_f22():
    F = f_poly_recursive(CF((2, 2)))
    got = specialize_f(F, Specialization.alexander())
    # y1 = y3 = -t^-1 and y2 = -t, with t = u^2
    assert got == t(0) - 3 * t(-2) + t(-4)


def test_jones_specialization_is_homfly_at_jones_point():
    # l = t^-1, q = t sends w to 1, so V-spec is P-spec followed by the substitution
    from ratknot.algebra import substitute

    for terms in [(2,), (-2,), (2, 2), (4, -2, 2), (-2, -4)]:
        cf = CF(terms)
        F = f_poly_recursive(cf)
        sign = 1 if cf[0] > 0 else -1
        p = specialize_f(F, Specialization.homfly(sign))
        at_jones = substitute(p, {"l": t(-2), "q": t(2)})
        assert at_jones == specialize_f(F, Specialization.jones(sign))


@settings(max_examples=60, deadline=None)
@given(valid_cfs)
def test_dp_specialization_matches_expansion(cf):
    poset = poset_from_cf(cf)
    F = f_poly_brute(poset)
    for spec in (Specialization.homfly(1), Specialization.homfly(-1), Specialization.alexander(), Specialization.jones()):
        assert specialize_poset(poset, spec) == specialize_f(F, spec)


# -- the specialized recursion ------------------------------------------------------


def test_first_term_steps():
    w = w_field()
    assert f_tilde_recursive(CF((4,))) == f_tilde_recursive(CF((2,))) + L**4 / w * (ONE - Q)
    assert f_tilde_recursive(CF((-4,))) == L**2 * f_tilde_recursive(CF((-2,))) + ONE - Q.inverse()
    for b in (-10, -8, -6, -4, -2, 2, 4, 6, 8, 10):
        assert f_tilde_base_by_steps(b) == f_tilde_recursive(CF((b,)))
    with pytest.raises(InvalidCF):
        f_tilde_base_by_steps(3)


def test_f_tilde_22_against_brute():
    F = f_poly_brute(poset_from_cf(CF((2, 2))))
    assert f_tilde_recursive(CF((2, 2))) == specialize_f(F, Specialization.homfly(1))


def test_f_tilde_empty():
    assert f_tilde_recursive(CF(())) == ONE
    with pytest.raises(InvalidCF):
        f_tilde_recursive(CF((2, 3)))


@settings(max_examples=80, deadline=None)
@given(even_cfs)
def test_f_tilde_matches_brute(cf):
    spec = Specialization.homfly(1 if cf[0] > 0 else -1)
    assert f_tilde_recursive(cf) == specialize_f(f_poly_brute(poset_from_cf(cf)), spec)


def test_table_row_spot_identity():
    # after a (-1, 1) type change the connector label is even, so nu = phi(y) = -l^2 q
    mu, nu, row = recursion_coefficients(CF((2, 2, 2)))
    assert row == "(...,-1,1)"
    assert mu == ONE and nu == -(L**2) * Q
    with pytest.raises(InvalidCF):
        recursion_coefficients(CF((2,)))


def _with_types(types):
    # t_i = (-1)^(i-1) sgn(c_i)
    return CF(tuple(2 * tt * (-1) ** i for i, tt in enumerate(types)))


@pytest.mark.parametrize(
    "types,row",
    [
        ((1, -1, -1), "(...,-1,-1)"),
        ((1, -1), "(1,-1)"),
        ((-1, 1, -1), "(...,-1,1,-1)"),
        ((1, 1, -1), "(...,1,1,-1)"),
        ((1, -1, 1), "(...,-1,1)"),
        ((1, 1), "(1,1)"),
        ((-1, 1, 1), "(...,-1,1,1)"),
        ((1, 1, 1), "(...,1,1,1)"),
    ],
)
def test_table_rows_reached(types, row):
    cf = _with_types(types)
    assert cf.types[1:] == types
    assert recursion_coefficients(cf).row == row
    F = f_poly_brute(poset_from_cf(cf))
    assert f_tilde_recursive(cf) == specialize_f(F, Specialization.homfly(cf.types[1]))
