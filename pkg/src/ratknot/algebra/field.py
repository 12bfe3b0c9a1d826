"""Reduced fractions of Laurent polynomials.

A :class:`FieldElem` is kept in canonical form: numerator and denominator
coprime, the denominator free of monomial factors (all its minimal exponents
are zero) and with positive graded-lex leading coefficient.  Integer content
is shared only through the gcd, so ``1/2`` stays ``1/2``.  Canonical form
makes structural equality coincide with equality of rational functions.
"""
from __future__ import annotations

from math import gcd
from typing import Mapping

from ratknot.algebra.gcd import gcd_cofactors, try_exact_div
from ratknot.algebra.poly import MultiPoly
from ratknot.errors import DivisionByZero

__all__ = ["FieldElem", "substitute"]


def _is_unit(p: MultiPoly) -> bool:
    return p.is_monomial() and abs(next(iter(p.terms.values()))) == 1


def _canonical(num: MultiPoly, den: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    """Normalize a coprime pair: clear monomials from ``den``, fix its sign."""
    if num.is_zero():
        return num, MultiPoly.one(num.vars)
    lo = den.min_exponents()
    if any(lo):
        neg = tuple(-x for x in lo)
        den = den.shift(neg)
        num = num.shift(neg)
    if den.leading_coefficient() < 0:
        num, den = -num, -den
    return num, den


class FieldElem:
    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly | None = None, *, reduced: bool = False):
        if den is None:
            den = MultiPoly.one(num.vars)
        if num.vars != den.vars:
            raise ValueError("numerator and denominator use different variables")
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.is_zero():
            num, den = num, MultiPoly.one(num.vars)
        elif den.is_monomial():
            (e, c), = den.terms.items()
            num = num.shift(tuple(-x for x in e))
            den = MultiPoly.const(c, num.vars)
            if abs(c) != 1 and not reduced:
                g, num_c, c_c = _int_reduce(num, c)
                num, den = num_c, MultiPoly.const(c_c, num.vars)
            if den.leading_coefficient() < 0:
                num, den = -num, -den
        else:
            if not reduced:
                _, num, den = gcd_cofactors(num, den)
            num, den = _canonical(num, den)
        self.num = num
        self.den = den

    # construction ------------------------------------------------------
    @classmethod
    def _raw(cls, num: MultiPoly, den: MultiPoly) -> FieldElem:
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def from_poly(cls, p: MultiPoly) -> FieldElem:
        return cls(p)

    @classmethod
    def const(cls, c: int, vars) -> FieldElem:
        return cls._raw(MultiPoly.const(c, vars), MultiPoly.one(vars))

    @classmethod
    def var(cls, name: str, vars) -> FieldElem:
        return cls._raw(MultiPoly.var(name, vars), MultiPoly.one(vars))

    @classmethod
    def monomial(cls, exps, coef: int, vars) -> FieldElem:
        return cls._raw(MultiPoly.monomial(exps, coef, vars), MultiPoly.one(vars))

    @classmethod
    def from_factored(cls, num: MultiPoly, factors) -> FieldElem:
        """``num / prod(f**k for f, k in factors)`` reduced by trial division.

        The factors must be irreducible, pairwise non-associate and free of
        monomial factors; then cancelling them one at a time leaves a
        coprime pair without any gcd computation.
        """
        vars = num.vars
        den = MultiPoly.one(vars)
        if num.is_zero():
            return cls._raw(num, den)
        for f, k in factors:
            while k > 0:
                q = try_exact_div(num, f)
                if q is None:
                    break
                num = q
                k -= 1
            if k:
                den = den * f**k
        num, den = _canonical(num, den)
        return cls._raw(num, den)

    @property
    def vars(self) -> tuple[str, ...]:
        return self.num.vars

    def _coerce(self, other) -> FieldElem:
        if isinstance(other, FieldElem):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch {self.vars} vs {other.vars}")
            return other
        if isinstance(other, int):
            return FieldElem.const(other, self.vars)
        if isinstance(other, MultiPoly):
            return FieldElem(other)
        return NotImplemented

    # predicates --------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, MultiPoly)):
            other = self._coerce(other)
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def cross_equal(self, other: FieldElem) -> bool:
        """Equality by cross multiplication, independent of canonical form."""
        other = self._coerce(other)
        return (self.num * other.den - other.num * self.den).is_zero()

    # arithmetic --------------------------------------------------------
    def __neg__(self) -> FieldElem:
        return FieldElem._raw(-self.num, self.den)

    def __add__(self, other) -> FieldElem:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.num, self.den, other.num, other.den
        if a.is_zero():
            return other
        if c.is_zero():
            return self
        if b.is_one():
            if d.is_one():
                return FieldElem._raw(a + c, b)
            return FieldElem._raw(*_canonical(a * d + c, d))
        if d.is_one():
            return FieldElem._raw(*_canonical(a + c * b, b))
        if b == d:
            return FieldElem(a + c, b)
        g, b1, d1 = gcd_cofactors(b, d)
        if _is_unit(g):
            num = a * d + c * b
            den = b * d
            if num.is_zero():
                return FieldElem.const(0, self.vars)
            return FieldElem._raw(*_canonical(num, den))
        t = a * d1 + c * b1
        if t.is_zero():
            return FieldElem.const(0, self.vars)
        g2, t2, g_rest = gcd_cofactors(t, g)
        return FieldElem._raw(*_canonical(t2, b1 * d1 * g_rest))

    __radd__ = __add__

    def __sub__(self, other) -> FieldElem:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> FieldElem:
        return (-self) + other

    def __mul__(self, other) -> FieldElem:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.num, self.den, other.num, other.den
        if a.is_zero() or c.is_zero():
            return FieldElem.const(0, self.vars)
        if b.is_one() and d.is_one():
            return FieldElem._raw(a * c, b)
        if not d.is_one():
            _, a, d = gcd_cofactors(a, d)
        if not b.is_one():
            _, c, b = gcd_cofactors(c, b)
        return FieldElem._raw(*_canonical(a * c, b * d))

    __rmul__ = __mul__

    def inverse(self) -> FieldElem:
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero")
        return FieldElem._raw(*_canonical(self.den, self.num))

    def __truediv__(self, other) -> FieldElem:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other) -> FieldElem:
        return self.inverse() * other

    def __pow__(self, k: int) -> FieldElem:
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return FieldElem.const(1, self.vars)
        return FieldElem._raw(*_canonical(self.num**k, self.den**k))

    # conversion ---------------------------------------------------------
    def as_poly(self) -> MultiPoly:
        if not self.den.is_one():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.num

    def __str__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"FieldElem({str(self)!r})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: Mapping, vars=("l", "s")) -> FieldElem:
        num = MultiPoly.from_json(data["num"], vars)
        den = MultiPoly.from_json(data["den"], vars)
        return cls(num, den)

    def substitute(self, assignment, vars=None) -> FieldElem:
        return substitute(self, assignment, vars)


def _int_reduce(num: MultiPoly, c: int):
    g = gcd(num.content(), c)
    return g, num.exact_int_div(g), c // g


def _as_field(x, vars) -> FieldElem:
    if isinstance(x, FieldElem):
        return x
    if isinstance(x, MultiPoly):
        return FieldElem(x)
    return FieldElem.const(int(x), vars)


def _monomial_image(x: FieldElem):
    """``(coef, exps)`` if ``x`` is a signed monomial, else ``None``."""
    if x.den.is_one() and x.num.is_monomial():
        (e, c), = x.num.terms.items()
        if abs(c) == 1:
            return c, e
    return None


def _sqrt_monomial(x: FieldElem) -> FieldElem:
    img = _monomial_image(x)
    if img is None or img[0] != 1 or any(k % 2 for k in img[1]):
        raise ValueError(f"cannot take a square root of {x} for q = s^2")
    return FieldElem.monomial(tuple(k // 2 for k in img[1]), 1, x.vars)


def _subst_poly(p: MultiPoly, images: list[FieldElem], vars) -> FieldElem:
    monos = [_monomial_image(x) for x in images]
    if all(m is not None for m in monos):
        return FieldElem(p.map_monomials(vars, monos))
    total = FieldElem.const(0, vars)
    cache: dict = {}

    def power(i: int, k: int) -> FieldElem:
        key = (i, k)
        if key not in cache:
            cache[key] = images[i] ** k
        return cache[key]

    for e, c in p.terms.items():
        term = FieldElem.const(c, vars)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        total = total + term
    return total


def substitute(f, assignment: Mapping[str, object], vars=None) -> FieldElem:
    """Substitute variables of ``f`` by field elements over ``vars``.

    A key ``"q"`` stands for ``s**2``; its image must be a perfect-square
    monomial so that ``s`` can be assigned its square root.
    """
    if isinstance(f, MultiPoly):
        f = FieldElem(f)
    assignment = dict(assignment)
    if vars is None:
        sample = next(
            (v for v in assignment.values() if isinstance(v, (FieldElem, MultiPoly))), None
        )
        vars = sample.vars if sample is not None else f.vars
    vars = tuple(vars)
    if "q" in assignment and "q" not in f.vars:
        assignment["s"] = _sqrt_monomial(_as_field(assignment.pop("q"), vars))
    images = []
    for name in f.vars:
        if name not in assignment:
            if name in vars:
                images.append(FieldElem.var(name, vars))
                continue
            raise KeyError(f"no value assigned to {name}")
        images.append(_as_field(assignment[name], vars))
    num = _subst_poly(f.num, images, vars)
    den = _subst_poly(f.den, images, vars)
    if den.is_zero():
        raise DivisionByZero(f"denominator of {f} vanishes under the substitution")
    return num / den
