"""HOMFLY, Jones and Alexander polynomials of rational links.

Two independent routes to HOMFLY are provided: the F-polynomial route
(``m[b] * F~[b]``) and a skein recursion on prefixes of an even continued
fraction, used as the oracle.  Results live in the field of rational
functions in ``l`` and ``s = q^(1/2)``; Jones and Alexander polynomials are
Laurent polynomials in ``u = t^(1/2)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ratknot.algebra import FieldElem, MultiPoly, exact_div
from ratknot.cfalgebra import (
    ContinuedFraction,
    ExtendedRational,
    LinkMarker,
    canonical_link_form,
)
from ratknot.errors import InvalidCF, SubstitutionSingularity
from ratknot.fpoly import (
    FIELD_VARS,
    FORMAL_VARS,
    T_VARS,
    Specialization,
    f_tilde_formal,
    specialize_poset,
    w_field,
    w_to_field,
)
from ratknot.poset import poset_from_cf

__all__ = [
    "MFactor",
    "m_factor",
    "two_unlink_homfly",
    "homfly_theorem",
    "homfly_oracle",
    "oracle_prefixes",
    "homfly",
    "jones",
    "alexander",
    "jones_from_homfly",
    "alexander_from_homfly",
    "alexander_via_corollary",
    "jones_via_specialization",
    "extension_identity_holds",
    "unit_equivalent",
    "invert_t",
]

METHODS = ("theorem", "oracle", "skein")


def _check_even(cf: ContinuedFraction) -> None:
    if not cf.degenerate and not all(c != 0 and c % 2 == 0 for c in cf.terms):
        raise InvalidCF(f"{cf} is not an even continued fraction")


def _lsw(coef: int, el: int, es: int, ew: int) -> MultiPoly:
    return MultiPoly.monomial((el, es, ew), coef, FORMAL_VARS)


@dataclass(frozen=True)
class MFactor:
    """``c0 * l^e_l * s^e_s * w^e_w``, with ``s = q^(1/2)``."""

    c0: int
    e_l: int
    e_s: int
    e_w: int

    @property
    def q_exponent(self) -> Fraction:
        return Fraction(self.e_s, 2)

    @property
    def decomposition(self) -> tuple[int, int, Fraction, int]:
        return self.c0, self.e_l, self.q_exponent, self.e_w

    def formal(self) -> MultiPoly:
        return _lsw(self.c0, self.e_l, self.e_s, self.e_w)

    @property
    def value(self) -> FieldElem:
        mono = FieldElem.monomial((self.e_l, self.e_s), self.c0, FIELD_VARS)
        return mono * w_field() ** self.e_w

    def at_jones(self) -> tuple[int, int]:
        """Sign and ``u``-exponent under ``l = t^-1, q = t`` (``w = 1``)."""
        return self.c0, self.e_s - 2 * self.e_l

    def at_alexander(self) -> tuple[int, int]:
        """Sign and ``u``-exponent under ``l = 1, q = t`` (``w = -t``)."""
        return self.c0 * (-1) ** (self.e_w % 2), self.e_s + 2 * self.e_w

    def times(self, c: int, el: int, es: int) -> MFactor:
        return MFactor(self.c0 * c, self.e_l + el, self.e_s + es, self.e_w)


_M_DEGENERATE = MFactor(-1, -1, -1, 1)
_M_EMPTY = MFactor(1, 0, 0, 0)


def m_factor(cf: ContinuedFraction) -> MFactor:
    _check_even(cf)
    if cf.degenerate:
        return _M_DEGENERATE
    ts = cf.types
    m2, m1 = _M_DEGENERATE, _M_EMPTY
    for k in range(1, len(cf) + 1):
        b = abs(cf[k - 1])
        if ts[k] == -1:
            m0 = m1.times(-1, 1, 1)
        elif ts[k - 1] == -1:
            m0 = m2.times(1, -b, 0)
        else:
            m0 = m1.times(1, 1 - b, 1)
        m2, m1 = m1, m0
    return m1


def two_unlink_homfly() -> FieldElem:
    """``(l - l^-1) / (s - s^-1)``."""
    l = FieldElem.var("l", FIELD_VARS)
    s = FieldElem.var("s", FIELD_VARS)
    return (l - l.inverse()) / (s - s.inverse())


def homfly_theorem(cf: ContinuedFraction) -> FieldElem:
    """``m[b] * F~[b]`` computed in the formal ring, then reduced once."""
    _check_even(cf)
    if cf.degenerate:
        raise InvalidCF("the F-polynomial route needs n >= 0")
    return w_to_field(m_factor(cf).formal() * f_tilde_formal(cf))


def _skein_coefficients(t: int, b: int) -> tuple[FieldElem, FieldElem]:
    """``l^(-t b)`` and ``(s - s^-1)(1 - l^(-t b)) / (l - l^-1)`` as Laurent polynomials."""
    V = FIELD_VARS
    a = MultiPoly.monomial((-t * b, 0), 1, V)
    num = (MultiPoly.monomial((0, 1), 1, V) - MultiPoly.monomial((0, -1), 1, V)) * (1 - a)
    den = MultiPoly.monomial((1, 0), 1, V) - MultiPoly.monomial((-1, 0), 1, V)
    return FieldElem(a), FieldElem(exact_div(num, den))


def oracle_prefixes(cf: ContinuedFraction) -> list[FieldElem]:
    """``[P[b_1..b_-1], P[], P[b_1], ..., P[b_1..b_n]]`` by the skein recursion."""
    _check_even(cf)
    out = [two_unlink_homfly()]
    if cf.degenerate:
        return out
    out.append(FieldElem.const(1, FIELD_VARS))
    ts = cf.types
    for k in range(1, len(cf) + 1):
        a, b = _skein_coefficients(ts[k], abs(cf[k - 1]))
        out.append(a * out[-2] + b * out[-1])
    return out


def homfly_oracle(cf: ContinuedFraction) -> FieldElem:
    return oracle_prefixes(cf)[-1]


def extension_identity_holds(cf: ContinuedFraction) -> bool:
    """Check ``P[.., b_n + 2 sgn b_n] = l^(-2 t_n) P_0 + t_n l^(-t_n) (s - s^-1) P_1``."""
    _check_even(cf)
    n = len(cf)
    if n < 1:
        raise InvalidCF("the extension identity needs n >= 1")
    bn = cf[n - 1]
    longer = ContinuedFraction(cf.terms[:-1] + (bn + (2 if bn > 0 else -2),))
    pre = oracle_prefixes(cf)
    p0, p1 = pre[-1], pre[-2]
    t = cf.types[n]
    V = FIELD_VARS
    s = FieldElem.var("s", V)
    rhs = FieldElem.monomial((-2 * t, 0), 1, V) * p0 + FieldElem.monomial((-t, 0), t, V) * (
        s - s.inverse()
    ) * p1
    return homfly_oracle(longer) == rhs


def _dispatch(form, method: str) -> FieldElem:
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if form is LinkMarker.UNKNOT:
        return FieldElem.const(1, FIELD_VARS)
    if form is LinkMarker.TWO_UNLINK:
        return two_unlink_homfly()
    if method == "theorem":
        return homfly_theorem(form)
    return homfly_oracle(form)


def homfly(r: ExtendedRational, method: str = "theorem") -> FieldElem:
    return _dispatch(canonical_link_form(r), method)


def _to_t(x: FieldElem, l_exp: int, what: str) -> FieldElem:
    """Substitute ``l = u^l_exp`` and ``s = u``; the result must be a Laurent polynomial."""
    images = [(1, (l_exp,)), (1, (1,))]
    num = x.num.map_monomials(T_VARS, images)
    den = x.den.map_monomials(T_VARS, images)
    if den.is_zero():
        raise SubstitutionSingularity(f"{what}: denominator of {x} vanishes")
    out = FieldElem(num) / FieldElem(den)
    if not out.is_polynomial():
        raise SubstitutionSingularity(f"{what} of {x} is not a Laurent polynomial: {out}")
    return out


def jones_from_homfly(x: FieldElem) -> FieldElem:
    return _to_t(x, -2, "Jones")


def alexander_from_homfly(x: FieldElem) -> FieldElem:
    return _to_t(x, 0, "Alexander")


def jones(r: ExtendedRational, method: str = "theorem") -> FieldElem:
    return jones_from_homfly(homfly(r, method))


def alexander(r: ExtendedRational, method: str = "theorem") -> FieldElem:
    return alexander_from_homfly(homfly(r, method))


def alexander_via_corollary(cf: ContinuedFraction) -> FieldElem:
    """``sign * t^e * phi_A(F)`` with the unit read off ``m`` at ``l = 1``."""
    _check_even(cf)
    if cf.degenerate:
        raise InvalidCF("needs n >= 0")
    sign, e = m_factor(cf).at_alexander()
    f = specialize_poset(poset_from_cf(cf), Specialization.alexander())
    return FieldElem.monomial((e,), sign, T_VARS) * f


def jones_via_specialization(cf: ContinuedFraction) -> FieldElem:
    """``m`` at ``l = t^-1, q = t`` times the Jones-level specialization of ``F``."""
    _check_even(cf)
    if cf.degenerate:
        raise InvalidCF("needs n >= 0")
    if not len(cf):
        return FieldElem.const(1, T_VARS)
    sign, e = m_factor(cf).at_jones()
    f = specialize_poset(poset_from_cf(cf), Specialization.jones(1 if cf[0] > 0 else -1))
    return FieldElem.monomial((e,), sign, T_VARS) * f


def invert_t(x: FieldElem) -> FieldElem:
    """``f(t) -> f(t^-1)``."""
    images = [(1, tuple(-1 if i == j else 0 for j in range(len(x.vars)))) for i in range(len(x.vars))]
    return FieldElem(x.num.map_monomials(x.vars, images)) / FieldElem(
        x.den.map_monomials(x.vars, images)
    )


def unit_equivalent(a: FieldElem, b: FieldElem) -> bool:
    """``a = +- monomial * b``."""
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    ratio = a / b
    return ratio.den.is_one() and ratio.num.is_monomial() and abs(
        next(iter(ratio.num.terms.values()))
    ) == 1
