"""Extended rationals, continued fractions and rational-link canonicalization.

An :class:`ExtendedRational` is a reduced fraction ``p/q`` with ``p >= 0``;
the sign of a negative rational lives in ``q`` and ``1/0`` is infinity.
A :class:`ContinuedFraction` is a tuple of integer terms ``[c_1, ..., c_n]``
together with the derived partial sums, type sequence and sign sequence.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import NamedTuple

from ratknot.errors import DomainError, InternalError, NoEvenExpansion, NotCoprime

__all__ = [
    "ExtendedRational",
    "ContinuedFraction",
    "CFQuantities",
    "LinkMarker",
    "INFINITY",
    "ZERO",
    "eval_cf",
    "positive_cf",
    "even_cf",
    "involution",
    "cf_quantities",
    "canonical_link_form",
    "link_isotopic",
    "oriented_link_isotopic",
    "parse_fraction",
    "parse_cf",
]


def _sgn(x: int) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True, order=False)
class ExtendedRational:
    """Reduced fraction ``p/q`` with ``p >= 0``; ``(1, 0)`` is infinity."""

    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if p < 0:
            raise DomainError(f"numerator must be nonnegative, got {p}/{q}")
        if p == 0 and q == 0:
            raise DomainError("0/0 is not an extended rational")
        if gcd(p, q) != 1:
            raise NotCoprime(f"{p}/{q} is not in lowest terms")

    @classmethod
    def of(cls, num: int, den: int = 1) -> ExtendedRational:
        """Reduce an arbitrary integer pair, moving the sign into ``q``."""
        if num == 0 and den == 0:
            raise DomainError("0/0 is not an extended rational")
        g = gcd(num, den)
        num, den = num // g, den // g
        if num < 0:
            num, den = -num, -den
        if num == 0:
            den = 1
        return cls(num, den)

    @classmethod
    def from_fraction(cls, x: Fraction | int) -> ExtendedRational:
        x = Fraction(x)
        return cls.of(x.numerator, x.denominator)

    @property
    def is_infinite(self) -> bool:
        return self.q == 0

    def to_fraction(self) -> Fraction:
        if self.q == 0:
            raise DomainError("infinity has no Fraction value")
        return Fraction(self.p, self.q)

    def at_least_one(self) -> bool:
        """True for ``r >= 1`` and for infinity."""
        return self.q == 0 or (self.q > 0 and self.p >= self.q)

    def abs_at_least_one(self) -> bool:
        return self.p >= abs(self.q)

    def __str__(self) -> str:
        if self.q == 1:
            return str(self.p)
        return f"{self.p}/{self.q}"


INFINITY = ExtendedRational(1, 0)
ZERO = ExtendedRational(0, 1)


class CFQuantities(NamedTuple):
    partial_sums: tuple[int, ...]
    types: tuple[int, ...]
    sign_sequence: tuple[int, ...]
    inner_sign_sequence: tuple[int, ...] | None


@dataclass(frozen=True)
class ContinuedFraction:
    """Continued fraction ``[c_1, ..., c_n]``.

    ``degenerate=True`` marks the ``n = -1`` convention, which evaluates to 0
    and has no terms.
    """

    terms: tuple[int, ...] = ()
    degenerate: bool = False

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(int(c) for c in self.terms))
        if self.degenerate and self.terms:
            raise DomainError("the n = -1 marker carries no terms")

    @classmethod
    def minus_one(cls) -> ContinuedFraction:
        return cls((), degenerate=True)

    @property
    def n(self) -> int:
        return -1 if self.degenerate else len(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __getitem__(self, i):
        return self.terms[i]

    def prefix(self, k: int) -> ContinuedFraction:
        """The prefix ``[c_1, ..., c_k]``; ``k = -1`` gives the degenerate marker."""
        if k < 0:
            return ContinuedFraction.minus_one()
        return ContinuedFraction(self.terms[:k])

    @property
    def partial_sums(self) -> tuple[int, ...]:
        out = [0]
        for c in self.terms:
            out.append(out[-1] + abs(c))
        return tuple(out)

    @property
    def types(self) -> tuple[int, ...]:
        """``(t_0, t_1, ..., t_n)`` with ``t_0 = -1``."""
        return (-1,) + tuple(
            (-1) ** (i - 1) * _sgn(c) for i, c in enumerate(self.terms, start=1)
        )

    @property
    def sign_sequence(self) -> tuple[int, ...]:
        ts = self.types
        out: list[int] = []
        for i, c in enumerate(self.terms, start=1):
            out.extend([ts[i]] * abs(c))
        return tuple(out)

    @property
    def inner_sign_sequence(self) -> tuple[int, ...]:
        seq = self.sign_sequence
        if len(seq) < 2:
            raise DomainError("inner sign sequence needs l_n >= 2")
        return seq[1:-1]

    @property
    def is_positive(self) -> bool:
        return not self.degenerate and all(c > 0 for c in self.terms)

    @property
    def is_even(self) -> bool:
        return not self.degenerate and all(c != 0 and c % 2 == 0 for c in self.terms)

    @property
    def is_poset_valid(self) -> bool:
        if self.degenerate or any(c == 0 for c in self.terms):
            return False
        ts = self.types
        for i in range(1, len(self.terms)):
            if ts[i] == ts[i + 1] and (abs(self.terms[i - 1]) < 2 or abs(self.terms[i]) < 2):
                return False
        return True

    def __str__(self) -> str:
        if self.degenerate:
            return "[c_1..c_-1]"
        return "[" + ",".join(str(c) for c in self.terms) + "]"


def eval_cf(cf: ContinuedFraction | tuple[int, ...] | list[int]) -> ExtendedRational:
    """Evaluate right to left in exact integer arithmetic."""
    if not isinstance(cf, ContinuedFraction):
        cf = ContinuedFraction(tuple(cf))
    if cf.degenerate:
        return ZERO
    # x = num/den, starting from [] = 1/0; c + 1/x = (c*num + den)/num
    num, den = 1, 0
    for c in reversed(cf.terms):
        num, den = c * num + den, num
    return ExtendedRational.of(num, den)


def positive_cf(r: ExtendedRational) -> ContinuedFraction:
    """Euclidean expansion with last term >= 2 whenever ``l_n >= 2``."""
    if r.is_infinite:
        return ContinuedFraction(())
    if not r.at_least_one():
        raise DomainError(f"{r} < 1 has no positive continued fraction")
    p, q = r.p, r.q
    terms = []
    while q:
        a, rem = divmod(p, q)
        terms.append(a)
        p, q = q, rem
    return ContinuedFraction(tuple(terms))


def even_cf(r: ExtendedRational) -> ContinuedFraction:
    """The unique expansion with every term even and nonzero.

    Greedy: each term is the even integer nearest the current tail value.
    """
    if r.is_infinite:
        return ContinuedFraction(())
    if not r.abs_at_least_one():
        raise DomainError(f"|{r}| < 1 has no even continued fraction")
    if r.p % 2 == 1 and r.q % 2 != 0:
        raise NoEvenExpansion(f"{r}: numerator and denominator are both odd")
    num, den = r.p, r.q
    if den < 0:
        num, den = -num, -den
    # |den| strictly decreases, so at most |q| + 1 steps
    bound = abs(r.q) + 2
    terms = []
    for _ in range(bound):
        # nearest even integer to num/den, den > 0
        b = 2 * ((num + den) // (2 * den))
        terms.append(b)
        rem_num = num - b * den
        if rem_num == 0:
            break
        if abs(rem_num) == den:
            raise NoEvenExpansion(f"{r}: odd integer tail reached")
        num, den = den, rem_num
        if den < 0:
            num, den = -num, -den
    else:
        raise InternalError(f"even expansion of {r} exceeded {bound} steps")
    cf = ContinuedFraction(tuple(terms))
    if not cf.is_even or eval_cf(cf) != r:
        raise InternalError(f"even expansion of {r} failed verification: {cf}")
    return cf


def involution(r: ExtendedRational) -> ExtendedRational:
    """``p/q -> p/(q - sgn(q) p)``."""
    if r.is_infinite:
        raise DomainError("involution is undefined at infinity")
    return ExtendedRational.of(r.p, r.q - _sgn(r.q) * r.p)


def cf_quantities(cf: ContinuedFraction) -> CFQuantities:
    seq = cf.sign_sequence
    inner = seq[1:-1] if len(seq) >= 2 else None
    return CFQuantities(cf.partial_sums, cf.types, seq, inner)


class LinkMarker(enum.Enum):
    UNKNOT = "unknot"
    TWO_UNLINK = "two-component unlink"


def canonical_link_form(r: ExtendedRational) -> ContinuedFraction | LinkMarker:
    """An even continued fraction whose rational link is isotopic to ``C(r)``."""
    if gcd(r.p, r.q) != 1:
        raise NotCoprime(f"{r.p}/{r.q}")
    if r.p == 0:
        return LinkMarker.TWO_UNLINK
    if r.p == 1:
        return LinkMarker.UNKNOT
    p = r.p
    if p % 2 == 0:
        # two components: q mod 2p fixes the orientation, so stay in that class
        q = r.q % (2 * p)
        if q > p:
            q -= 2 * p
        return even_cf(ExtendedRational(p, q))
    q = r.q % p
    if q % 2 == 1:
        q -= p
    return even_cf(ExtendedRational(p, q))


def link_isotopic(r: ExtendedRational, s: ExtendedRational) -> bool:
    """Isotopy of unoriented rational links ``C(r)`` and ``C(s)``."""
    for x in (r, s):
        if gcd(x.p, x.q) != 1:
            raise NotCoprime(f"{x.p}/{x.q}")
    if r.p != s.p:
        return False
    p = r.p
    if p == 0:
        return True
    return (s.q - r.q) % p == 0 or (r.q * s.q - 1) % p == 0


def oriented_link_isotopic(r: ExtendedRational, s: ExtendedRational) -> bool:
    """Isotopy of ``C(r)`` and ``C(s)`` with the orientations fixed by :func:`canonical_link_form`.

    Knots need no refinement.  For two-component links the canonical form
    keeps ``q mod 2p``; two such links agree as oriented links when the
    residues are equal or inverse modulo ``2p``.
    """
    if not link_isotopic(r, s):
        return False
    p = r.p
    if p == 0 or p % 2 == 1:
        return True
    a, b = r.q % (2 * p), s.q % (2 * p)
    return a == b or (a * b) % (2 * p) == 1


_FRACTION_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(-?\d+))?\s*$")


def parse_fraction(text: str) -> ExtendedRational:
    """Parse ``[-]digits/[-]digits`` or a bare integer; the fraction must be reduced."""
    m = _FRACTION_RE.match(text)
    if not m:
        raise DomainError(f"cannot parse fraction {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if gcd(num, den) != 1:
        raise NotCoprime(f"{num}/{den} is not in lowest terms")
    return ExtendedRational.of(num, den)


def parse_cf(text: str) -> ContinuedFraction:
    text = text.strip().strip("[]")
    if not text:
        return ContinuedFraction(())
    try:
        return ContinuedFraction(tuple(int(t) for t in text.split(",")))
    except ValueError:
        raise DomainError(f"cannot parse continued fraction {text!r}") from None
