"""F-polynomials of labelled path posets and their specializations.

An :class:`FPolynomial` is a multilinear polynomial in variables ``y_i``
indexed by poset labels; each monomial is stored as a bitmask with bit ``i``
standing for ``y_i``.  Products are only defined between polynomials in
disjoint variable sets, which is all the recursions ever need.

Specializations into the HOMFLY ring are computed in the formal Laurent ring
``Z[l, s, w]`` (with ``s`` a square root of ``q``) and only at the end mapped
to reduced fractions by substituting ``w = s^2 (1 - l^2 s^2) / (s^2 - 1)``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple

from ratknot.algebra import FieldElem, MultiPoly, bracket
from ratknot.cfalgebra import ContinuedFraction
from ratknot.errors import DomainError, InvalidCF
from ratknot.poset import FinitePoset, PathPoset, order_ideals, poset_from_cf

__all__ = [
    "FPolynomial",
    "Spec",
    "Specialization",
    "RecursionCoefficients",
    "FIELD_VARS",
    "FORMAL_VARS",
    "T_VARS",
    "f_poly_brute",
    "f_segment",
    "f_poly_recursive",
    "specialization_images",
    "specialize_f",
    "specialize_poset",
    "w_to_field",
    "w_field",
    "f_tilde_formal",
    "f_tilde_recursive",
    "f_tilde_base_by_steps",
    "recursion_coefficients",
    "segment_specialized_sum",
    "segment_specialized_product",
]

FIELD_VARS = ("l", "s")
FORMAL_VARS = ("l", "s", "w")
T_VARS = ("u",)  # u = t^(1/2)


class FPolynomial:
    """Multilinear polynomial in ``y_label``; monomials are label bitmasks."""

    __slots__ = ("terms", "names")

    def __init__(self, terms: Mapping[int, int] | None = None, names: Mapping[int, str] | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}
        self.names = dict(names) if names else None

    @classmethod
    def one(cls) -> FPolynomial:
        return cls({0: 1})

    @classmethod
    def var(cls, label: int) -> FPolynomial:
        return cls({1 << label: 1})

    @classmethod
    def product(cls, labels: Iterable[int]) -> FPolynomial:
        mask = 0
        for lab in labels:
            mask |= 1 << lab
        return cls({mask: 1})

    def __eq__(self, other) -> bool:
        if not isinstance(other, FPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: FPolynomial) -> FPolynomial:
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return FPolynomial(out, self.names or other.names)

    def __neg__(self) -> FPolynomial:
        return FPolynomial({m: -c for m, c in self.terms.items()}, self.names)

    def __sub__(self, other: FPolynomial) -> FPolynomial:
        return self + (-other)

    def __mul__(self, other) -> FPolynomial:
        if isinstance(other, int):
            return FPolynomial({m: c * other for m, c in self.terms.items()}, self.names)
        out: dict[int, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                if m1 & m2:
                    raise ValueError("F-polynomial product over overlapping variables")
                m = m1 | m2
                out[m] = out.get(m, 0) + c1 * c2
        return FPolynomial(out, self.names or other.names)

    __rmul__ = __mul__

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def support(self) -> int:
        mask = 0
        for m in self.terms:
            mask |= m
        return mask

    def labels(self) -> list[int]:
        return _bits(self.support)

    def is_final_form(self) -> bool:
        """All coefficients 1 and constant term 1 (the empty ideal)."""
        return self.terms.get(0) == 1 and all(c == 1 for c in self.terms.values())

    def evaluate(self, values: Mapping[int, object] | None = None, default=1):
        """Evaluate with ``y_i = values[i]`` (``default`` for missing labels)."""
        values = values or {}
        total = 0
        for m, c in self.terms.items():
            term = c
            for lab in _bits(m):
                term = term * values.get(lab, default)
            total = total + term
        return total

    def to_multipoly(self, labels: Iterable[int] | None = None) -> MultiPoly:
        labels = sorted(labels if labels is not None else self.labels())
        pos = {lab: i for i, lab in enumerate(labels)}
        vars = tuple(self._name(lab) for lab in labels)
        out = {}
        for m, c in self.terms.items():
            e = [0] * len(labels)
            for lab in _bits(m):
                e[pos[lab]] = 1
            out[tuple(e)] = c
        return MultiPoly(vars, out)

    def _name(self, lab: int) -> str:
        if self.names and lab in self.names:
            return f"y{self.names[lab]}"
        return f"y{lab}"

    def sorted_terms(self) -> list[tuple[int, int]]:
        return sorted(self.terms.items(), key=lambda t: (bin(t[0]).count("1"), _bits(t[0])))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(self._name(lab) for lab in _bits(m))
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            parts.append((c < 0, body))
        neg, body = parts[0]
        out = ("-" if neg else "") + body
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"FPolynomial({str(self)!r})"


def _bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


# -- F-polynomials -----------------------------------------------------------


def f_poly_brute(poset, cap: int | None = None) -> FPolynomial:
    """Sum over all order ideals of the product of their ``y`` variables."""
    if isinstance(poset, FinitePoset):
        elems = list(poset.elements)
        bit = {e: i for i, e in enumerate(elems)}
        names = {i: str(e) for i, e in enumerate(elems)}
    else:
        bit = {lab: lab for lab in poset.labels}
        names = None
    terms: dict[int, int] = {}
    for ideal in order_ideals(poset, cap):
        mask = 0
        for e in ideal:
            mask |= 1 << bit[e]
        terms[mask] = terms.get(mask, 0) + 1
    return FPolynomial(terms, names)


def _check(cf: ContinuedFraction) -> None:
    if not cf.is_poset_valid:
        raise InvalidCF(f"{cf} does not satisfy the path-poset conditions")


def _bottom_up(cf: ContinuedFraction, m: int) -> list[int]:
    ls = cf.partial_sums
    size = abs(cf[m - 1]) - 1
    if cf.types[m] == 1:
        return [ls[m - 1] + j for j in range(1, size + 1)]
    return [ls[m] - j for j in range(1, size + 1)]


def f_segment(cf: ContinuedFraction, m: int) -> FPolynomial:
    """``F(S_m)``: the chain's ideals are its initial runs from the bottom."""
    _check(cf)
    if not 1 <= m <= len(cf):
        raise IndexError(f"segment index {m} out of range for {cf}")
    terms = {0: 1}
    mask = 0
    for lab in _bottom_up(cf, m):
        mask |= 1 << lab
        terms[mask] = 1
    return FPolynomial(terms)


def _segment_mask(cf: ContinuedFraction, m: int) -> int:
    ls = cf.partial_sums
    mask = 0
    for lab in range(ls[m - 1] + 1, ls[m]):
        mask |= 1 << lab
    return mask


def _difference_masks(cf: ContinuedFraction, n: int) -> tuple[int, int]:
    """Masks of ``Q_0 - Q_2`` (for type ``(.., 1, -1)``) and ``Q_1 - Q_2`` (``(.., 1, 1)``)."""
    ls = cf.partial_sums
    ts = cf.types
    q1_minus_q2 = _segment_mask(cf, n - 1)
    if n >= 3 and ts[n - 2] != ts[n - 1]:
        q1_minus_q2 |= 1 << ls[n - 2]
    q0_minus_q2 = q1_minus_q2 | (1 << ls[n - 1]) | _segment_mask(cf, n)
    return q0_minus_q2, q1_minus_q2


def f_poly_recursive(cf: ContinuedFraction) -> FPolynomial:
    """``F[c_1..c_n]`` from the two previous prefixes, by the type of the last two terms."""
    _check(cf)
    n = len(cf)
    if n == 0:
        return FPolynomial.one()
    ts = cf.types
    ls = cf.partial_sums
    f2, f1 = FPolynomial.one(), f_segment(cf, 1)
    for k in range(2, n + 1):
        fs = f_segment(cf, k)
        pair = (ts[k - 1], ts[k])
        if pair == (-1, -1):
            f0 = -(f2 * FPolynomial({_segment_mask(cf, k): 1})) + f1 * fs
        elif pair == (1, -1):
            q0q2, _ = _difference_masks(cf, k)
            f0 = f2 * FPolynomial({q0q2: 1}) + f1 * fs
        elif pair == (-1, 1):
            f0 = f2 + f1 * fs * FPolynomial.var(ls[k - 1])
        else:
            _, q1q2 = _difference_masks(cf, k)
            f0 = -(f2 * FPolynomial({q1q2: 1})) + f1 * fs
        f2, f1 = f1, f0
    return f1


# -- specializations ---------------------------------------------------------


class Spec(enum.Enum):
    P = "P"  # HOMFLY, formal (l, s, w)
    A = "A"  # Alexander, t = u^2
    V = "V"  # Jones, t = u^2


@dataclass(frozen=True)
class Specialization:
    kind: Spec
    b1_sign: int = 1

    def __post_init__(self):
        if self.b1_sign not in (1, -1):
            raise DomainError("b1_sign must be +1 or -1")

    @classmethod
    def homfly(cls, b1_sign: int) -> Specialization:
        return cls(Spec.P, b1_sign)

    @classmethod
    def alexander(cls) -> Specialization:
        return cls(Spec.A)

    @classmethod
    def jones(cls, b1_sign: int = 1) -> Specialization:
        return cls(Spec.V, b1_sign)

    @property
    def vars(self) -> tuple[str, ...]:
        return FORMAL_VARS if self.kind is Spec.P else T_VARS

    def image(self, label: int) -> tuple[int, tuple[int, ...]]:
        """Signed monomial ``(coef, exps)`` that ``y_label`` maps to."""
        if label < 1:
            raise DomainError("specialized labels start at 1")
        if self.kind is Spec.A:
            return -1, (2 if label % 2 == 0 else -2,)
        if self.kind is Spec.V:
            return (1, (-4,)) if label == 1 else (-1, (-2,))
        if label == 1:
            return (1, (2, 0, -1)) if self.b1_sign > 0 else (1, (0, -4, 1))
        if label % 2 == 0:
            return -1, (2, 2, 0)
        return -1, (0, -2, 0)


def specialization_images(spec: Specialization, labels: Iterable[int]) -> dict:
    return {lab: spec.image(lab) for lab in labels}


def _mono(coef: int, exps, vars) -> MultiPoly:
    return MultiPoly.monomial(exps, coef, vars)


def _specialize_formal(F: FPolynomial, spec: Specialization) -> MultiPoly:
    vars = spec.vars
    nv = len(vars)
    cache: dict[int, tuple[int, tuple[int, ...]]] = {}
    out: dict[tuple[int, ...], int] = {}
    for m, c in F.terms.items():
        exps = [0] * nv
        coef = c
        for lab in _bits(m):
            img = cache.get(lab)
            if img is None:
                img = cache[lab] = spec.image(lab)
            coef *= img[0]
            for j in range(nv):
                exps[j] += img[1][j]
        key = tuple(exps)
        out[key] = out.get(key, 0) + coef
    return MultiPoly(vars, out)


_S = MultiPoly.var("s", FIELD_VARS)
_L = MultiPoly.var("l", FIELD_VARS)
_ONE = MultiPoly.one(FIELD_VARS)
# w = s^2 (1 - l s)(1 + l s) / ((s - 1)(s + 1))
_W_NUM_FACTORS = (_ONE - _L * _S, _ONE + _L * _S)
_W_DEN_FACTORS = (_S - _ONE, _S + _ONE)
_W_A = _W_NUM_FACTORS[0] * _W_NUM_FACTORS[1]
_W_B = _W_DEN_FACTORS[0] * _W_DEN_FACTORS[1]


def w_field() -> FieldElem:
    return FieldElem(_W_A.shift((0, 2)), _W_B)


def w_to_field(p: MultiPoly) -> FieldElem:
    """Map a polynomial in ``(l, s, w)`` to the field by substituting ``w``."""
    if p.vars != FORMAL_VARS:
        raise ValueError(f"expected variables {FORMAL_VARS}, got {p.vars}")
    by_k: dict[int, dict] = {}
    for (a, b, k), c in p.terms.items():
        by_k.setdefault(k, {})[(a, b + 2 * k)] = c
    if not by_k:
        return FieldElem.const(0, FIELD_VARS)
    lo = min(0, min(by_k))
    hi = max(0, max(by_k))
    powers_a = [_ONE]
    powers_b = [_ONE]
    for _ in range(hi - lo):
        powers_a.append(powers_a[-1] * _W_A)
        powers_b.append(powers_b[-1] * _W_B)
    num = MultiPoly.zero(FIELD_VARS)
    for k, terms in by_k.items():
        num = num + MultiPoly(FIELD_VARS, terms) * (powers_a[k - lo] * powers_b[hi - k])
    factors = [(f, -lo) for f in _W_NUM_FACTORS] + [(f, hi) for f in _W_DEN_FACTORS]
    return FieldElem.from_factored(num, factors)


def _finish(p: MultiPoly, spec: Specialization) -> FieldElem:
    if spec.kind is Spec.P:
        return w_to_field(p)
    return FieldElem(p)


def specialize_f(F: FPolynomial, spec: Specialization) -> FieldElem:
    """Apply a specialization to every monomial of ``F``."""
    return _finish(_specialize_formal(F, spec), spec)


def _dp_formal(poset: PathPoset, spec: Specialization) -> MultiPoly:
    vars = spec.vars
    one = MultiPoly.one(vars)
    if not len(poset):
        return one
    ys = [_mono(*spec.image(lab), vars) for lab in poset.labels]
    out0, out1 = one, ys[0]
    for o, y in zip(poset.orientations, ys[1:]):
        if o == 1:
            out0, out1 = out0 + out1, out1 * y
        else:
            out0, out1 = out0, (out0 + out1) * y
    return out0 + out1


def specialize_poset(poset: PathPoset, spec: Specialization) -> FieldElem:
    """``spec(F(poset))`` by dynamic programming along the path, without expanding ``F``."""
    return _finish(_dp_formal(poset, spec), spec)


# -- the specialized recursion ------------------------------------------------


class RecursionCoefficients(NamedTuple):
    mu: FieldElem
    nu: FieldElem
    row: str


def _check_even(cf: ContinuedFraction) -> None:
    if cf.degenerate or not all(c != 0 and c % 2 == 0 for c in cf.terms):
        raise InvalidCF(f"{cf} is not an even continued fraction")


def _table_row(cf: ContinuedFraction, n: int) -> tuple[str, tuple[int, tuple], tuple[int, tuple]]:
    """Row label and formal monomials ``(coef, (e_l, e_s, e_w))`` for mu and nu."""
    ts = cf.types
    b = [abs(c) for c in cf.terms]
    bn, bm = b[n - 1], b[n - 2]
    one = (1, (0, 0, 0))
    if ts[n] == -1:
        if ts[n - 1] == -1:
            return "(...,-1,-1)", (1, (bn - 2, -2, 0)), one
        if n == 2:
            return "(1,-1)", (1, (bn + bm, 0, -1)), one
        if ts[n - 2] == -1:
            return "(...,-1,1,-1)", (1, (bn + bm, 0, 0)), one
        return "(...,1,1,-1)", (-1, (bn + bm - 2, -2, 0)), one
    if ts[n - 1] == -1:
        return "(...,-1,1)", one, (-1, (2, 2, 0))
    if n == 2:
        return "(1,1)", (-1, (bm, 0, -1)), one
    if ts[n - 2] == -1:
        return "(...,-1,1,1)", (-1, (bm, 0, 0)), one
    return "(...,1,1,1)", (1, (bm - 2, -2, 0)), one


def recursion_coefficients(cf: ContinuedFraction) -> RecursionCoefficients:
    """``mu`` and ``nu`` for the last step of the specialized recursion (``n > 1``)."""
    _check_even(cf)
    n = len(cf)
    if n < 2:
        raise InvalidCF("the recursion needs n > 1")
    row, mu, nu = _table_row(cf, n)
    return RecursionCoefficients(
        w_to_field(_mono(*mu, FORMAL_VARS)), w_to_field(_mono(*nu, FORMAL_VARS)), row
    )


def _segment_sum_formal(b: int) -> MultiPoly:
    """``(1 - q^-1) [|b|/2]_{l^2}`` in the formal ring."""
    one = MultiPoly.one(FORMAL_VARS)
    factor = one - _mono(1, (0, -2, 0), FORMAL_VARS)
    return factor * bracket(abs(b) // 2, _mono(1, (2, 0, 0), FORMAL_VARS))


def f_tilde_formal(cf: ContinuedFraction) -> MultiPoly:
    """Specialized F-polynomial in ``(l, s, w)`` via the mu/nu recursion."""
    _check_even(cf)
    n = len(cf)
    one = MultiPoly.one(FORMAL_VARS)
    if n == 0:
        return one
    spec = Specialization.homfly(1 if cf[0] > 0 else -1)
    f2, f1 = one, _specialize_formal(f_segment(cf, 1), spec)
    for k in range(2, n + 1):
        _, mu, nu = _table_row(cf, k)
        f0 = f2 * _mono(*mu, FORMAL_VARS) + f1 * _segment_sum_formal(cf[k - 1]) * _mono(*nu, FORMAL_VARS)
        f2, f1 = f1, f0
    return f1


def f_tilde_recursive(cf: ContinuedFraction) -> FieldElem:
    return w_to_field(f_tilde_formal(cf))


def f_tilde_base_by_steps(b1: int) -> FieldElem:
    """``F~[b_1]`` built from ``F~[+-2]`` in steps of two."""
    if b1 == 0 or b1 % 2:
        raise InvalidCF("b_1 must be even and nonzero")
    V = FORMAL_VARS
    one = MultiPoly.one(V)
    if b1 > 0:
        f = one + _mono(1, (2, 0, -1), V)
        for b in range(2, b1, 2):
            f = f + _mono(1, (b + 2, 0, -1), V) * (one - _mono(1, (0, 2, 0), V))
    else:
        f = one + _mono(1, (0, -4, 1), V)
        for _ in range(-2, b1, -2):
            f = _mono(1, (2, 0, 0), V) * f + one - _mono(1, (0, -2, 0), V)
    return w_to_field(f)


def segment_specialized_sum(cf: ContinuedFraction, m: int) -> FieldElem:
    spec = Specialization.homfly(1 if cf[0] > 0 else -1)
    return specialize_f(f_segment(cf, m), spec)


def segment_specialized_product(cf: ContinuedFraction, m: int) -> FieldElem:
    spec = Specialization.homfly(1 if cf[0] > 0 else -1)
    return specialize_f(FPolynomial({_segment_mask(cf, m): 1}), spec)
