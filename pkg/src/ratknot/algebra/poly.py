"""Sparse multivariate Laurent polynomials over the integers.

Terms live in a dict from exponent tuples (entries may be negative) to
nonzero Python ints.  Instances are treated as immutable.
"""
from __future__ import annotations

from math import gcd
from typing import Iterable, Mapping

__all__ = ["MultiPoly", "HALF_VARIABLES", "format_monomial", "bracket"]

# Variables that stand for square roots: s = q^(1/2), u = t^(1/2).
HALF_VARIABLES = {"s": "q", "u": "t"}


def _grlex_key(e: tuple[int, ...]):
    return (sum(e), e)


class MultiPoly:
    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Iterable[str], terms: Mapping[tuple[int, ...], int] | None = None):
        self.vars = tuple(vars)
        self.terms = {e: c for e, c in (terms or {}).items() if c}
        self._hash = None

    # construction ------------------------------------------------------
    @classmethod
    def _raw(cls, vars: tuple[str, ...], terms: dict) -> MultiPoly:
        obj = cls.__new__(cls)
        obj.vars = vars
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, vars) -> MultiPoly:
        return cls._raw(tuple(vars), {})

    @classmethod
    def const(cls, c: int, vars) -> MultiPoly:
        vars = tuple(vars)
        return cls._raw(vars, {(0,) * len(vars): c} if c else {})

    @classmethod
    def one(cls, vars) -> MultiPoly:
        return cls.const(1, vars)

    @classmethod
    def monomial(cls, exps, coef: int, vars) -> MultiPoly:
        vars = tuple(vars)
        exps = tuple(exps)
        if len(exps) != len(vars):
            raise ValueError("exponent vector does not match the variables")
        return cls._raw(vars, {exps: coef} if coef else {})

    @classmethod
    def var(cls, name: str, vars) -> MultiPoly:
        vars = tuple(vars)
        e = tuple(1 if v == name else 0 for v in vars)
        if name not in vars:
            raise ValueError(f"unknown variable {name}")
        return cls._raw(vars, {e: 1})

    def _coerce(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch {self.vars} vs {other.vars}")
            return other
        if isinstance(other, int):
            return MultiPoly.const(other, self.vars)
        return NotImplemented

    # predicates --------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get((0,) * len(self.vars)) == 1

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = MultiPoly.const(other, self.vars)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # ring operations ---------------------------------------------------
    def __add__(self, other) -> MultiPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        for e, c in small.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> MultiPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) - c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.vars, out)

    def __rsub__(self, other) -> MultiPoly:
        return (-self) + other

    def __mul__(self, other) -> MultiPoly:
        if isinstance(other, int):
            if not other:
                return MultiPoly.zero(self.vars)
            return MultiPoly._raw(self.vars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (eb, cb), = b.items()
            if not any(eb):
                return MultiPoly._raw(self.vars, {e: c * cb for e, c in a.items()})
            return MultiPoly._raw(
                self.vars,
                {tuple(x + y for x, y in zip(e, eb)): c * cb for e, c in a.items()},
            )
        out: dict = {}
        get = out.get
        if len(self.vars) == 2:
            for (x1, y1), c1 in b.items():
                for (x2, y2), c2 in a.items():
                    k = (x1 + x2, y1 + y2)
                    out[k] = get(k, 0) + c1 * c2
        else:
            for e1, c1 in b.items():
                for e2, c2 in a.items():
                    k = tuple(x + y for x, y in zip(e1, e2))
                    out[k] = get(k, 0) + c1 * c2
        return MultiPoly._raw(self.vars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MultiPoly:
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative powers only for monomials")
            (e, c), = self.terms.items()
            if abs(c) != 1:
                raise ValueError("negative power of a non-unit monomial")
            return MultiPoly._raw(self.vars, {tuple(-x * -k for x in e): c ** (-k)})
        result = MultiPoly.one(self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # structure ---------------------------------------------------------
    def shift(self, exps) -> MultiPoly:
        """Multiply by the monomial ``x^exps``."""
        if not any(exps):
            return self
        return MultiPoly._raw(
            self.vars, {tuple(x + y for x, y in zip(e, exps)): c for e, c in self.terms.items()}
        )

    def min_exponents(self) -> tuple[int, ...]:
        if not self.terms:
            return (0,) * len(self.vars)
        return tuple(min(col) for col in zip(*self.terms))

    def max_exponents(self) -> tuple[int, ...]:
        if not self.terms:
            return (0,) * len(self.vars)
        return tuple(max(col) for col in zip(*self.terms))

    def leading_term(self) -> tuple[tuple[int, ...], int]:
        """Leading exponent and coefficient under graded lex (first variable first)."""
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def leading_coefficient(self) -> int:
        return self.leading_term()[1] if self.terms else 0

    def content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
            if g == 1:
                break
        return g

    def exact_int_div(self, d: int) -> MultiPoly:
        return MultiPoly._raw(self.vars, {e: c // d for e, c in self.terms.items()})

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms in decreasing graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def evaluate(self, point: Mapping[str, object]):
        """Evaluate at values supporting ``*``, ``+`` and integer powers."""
        total = 0
        for e, c in self.terms.items():
            term = c
            for name, k in zip(self.vars, e):
                if k:
                    term = term * point[name] ** k
            total = total + term
        return total

    def map_monomials(self, vars, images) -> MultiPoly:
        """Substitute each variable by a signed Laurent monomial.

        ``images[i]`` is ``(coef, exps)`` in the target variables ``vars``;
        the coefficient must be a unit (``+1`` or ``-1``).
        """
        vars = tuple(vars)
        nt = len(vars)
        out: dict = {}
        for e, c in self.terms.items():
            exps = [0] * nt
            coef = c
            for k, (ic, ie) in zip(e, images):
                if k:
                    if ic == -1 and k % 2:
                        coef = -coef
                    for j in range(nt):
                        exps[j] += k * ie[j]
            key = tuple(exps)
            out[key] = out.get(key, 0) + coef
        return MultiPoly(vars, out)

    def rename(self, vars) -> MultiPoly:
        vars = tuple(vars)
        if len(vars) != len(self.vars):
            raise ValueError("arity mismatch")
        return MultiPoly._raw(vars, dict(self.terms))

    # printing ----------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = format_monomial(self.vars, e)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"MultiPoly({self.vars!r}, {str(self)!r})"

    def to_json(self) -> list[list[int]]:
        return [[c, *e] for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data, vars) -> MultiPoly:
        vars = tuple(vars)
        terms: dict = {}
        for row in data:
            c, *e = row
            if len(e) != len(vars):
                raise ValueError("JSON term arity does not match the variables")
            terms[tuple(e)] = terms.get(tuple(e), 0) + int(c)
        return cls(vars, terms)


def format_monomial(vars, exps) -> str:
    factors = []
    for name, k in zip(vars, exps):
        if not k:
            continue
        if name in HALF_VARIABLES:
            base = HALF_VARIABLES[name]
            if k % 2 == 0:
                k //= 2
                factors.append(base if k == 1 else f"{base}^{k}")
            else:
                factors.append(f"{base}^({k}/2)")
        else:
            factors.append(name if k == 1 else f"{name}^{k}")
    return "*".join(factors)


def bracket(k: int, x: MultiPoly) -> MultiPoly:
    """``[k]_x = 1 + x + ... + x^(k-1)``; ``[0]_x = 0``."""
    if k < 0:
        raise ValueError("bracket needs k >= 0")
    total = MultiPoly.zero(x.vars)
    power = MultiPoly.one(x.vars)
    for _ in range(k):
        total = total + power
        power = power * x
    return total
