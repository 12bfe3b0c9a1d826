"""Polynomial GCD and exact division over the integers.

Polynomials are converted to a dense recursive form: a polynomial in
``k + 1`` variables is a list (lowest degree first) of polynomials in the
remaining ``k`` variables, bottoming out at Python ints.  ``u`` below is the
number of variables minus one, so ``u = -1`` means a plain integer.

The GCD is the heuristic evaluation/interpolation method (evaluate the main
variable at a large integer, recurse, rebuild the candidate from balanced
digits, check by trial division), with a primitive-remainder-sequence
Euclidean algorithm as a fallback.
"""
from __future__ import annotations

from math import gcd as igcd, isqrt

from ratknot.algebra.poly import MultiPoly
from ratknot.errors import DivisionByZero

__all__ = ["poly_gcd", "gcd_cofactors", "exact_div", "try_exact_div"]

_HEU_TRIES = 6


class _HeuristicFailed(Exception):
    pass


def _zero(u: int):
    return 0 if u < 0 else []


def _strip(f: list) -> list:
    while f and not f[-1]:
        f.pop()
    return f


def _add(f, g, u):
    if u < 0:
        return f + g
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = _add(out[i], c, u - 1)
    return _strip(out)


def _neg(f, u):
    if u < 0:
        return -f
    return [_neg(c, u - 1) for c in f]


def _sub(f, g, u):
    return _add(f, _neg(g, u), u)


def _mul_ground(f, c: int, u):
    if u < 0:
        return f * c
    if not c:
        return []
    return [_mul_ground(x, c, u - 1) for x in f]


def _quo_ground(f, c: int, u):
    if u < 0:
        return f // c
    return [_quo_ground(x, c, u - 1) for x in f]


def _mul(f, g, u):
    if u < 0:
        return f * g
    if not f or not g:
        return []
    if u == 0:
        out = [0] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            if a:
                for j, b in enumerate(g):
                    out[i + j] += a * b
        return _strip(out)
    out = [[] for _ in range(len(f) + len(g) - 1)]
    for i, a in enumerate(f):
        if not a:
            continue
        for j, b in enumerate(g):
            if b:
                out[i + j] = _add(out[i + j], _mul(a, b, u - 1), u - 1)
    return _strip(out)


def _mul_coef(f, c, u):
    """Multiply every main-variable coefficient of ``f`` by ``c``."""
    if not c:
        return []
    return _strip([_mul(x, c, u - 1) for x in f])


def _eval(f, x: int, u):
    """Evaluate the main variable at ``x``."""
    r = _zero(u - 1)
    for c in reversed(f):
        r = _add(_mul_ground(r, x, u - 1), c, u - 1)
    return r


def _trunc(f, x: int, u):
    """Balanced residues of every integer coefficient modulo ``x``."""
    if u < 0:
        r = f % x
        return r - x if r > x // 2 else r
    return _strip([_trunc(c, x, u - 1) for c in f])


def _max_norm(f, u) -> int:
    if u < 0:
        return abs(f)
    return max((_max_norm(c, u - 1) for c in f), default=0)


def _ground_lc(f, u) -> int:
    while u >= 0:
        f = f[-1]
        u -= 1
    return f


def _ground_content(f, u) -> int:
    if u < 0:
        return abs(f)
    g = 0
    for c in f:
        g = igcd(g, _ground_content(c, u - 1))
        if g == 1:
            break
    return g


def _div_exact(f, g, u):
    """Exact quotient ``f / g``, or ``None`` when ``g`` does not divide ``f``."""
    if u < 0:
        q, r = divmod(f, g)
        return None if r else q
    if not g:
        raise DivisionByZero("polynomial division by zero")
    if not f:
        return []
    dg = len(g) - 1
    if len(f) - 1 < dg:
        return None
    lcg = g[-1]
    r = list(f)
    q = [_zero(u - 1)] * (len(f) - dg)
    while r and len(r) - 1 >= dg:
        k = len(r) - 1 - dg
        c = _div_exact(r[-1], lcg, u - 1)
        if c is None:
            return None
        q[k] = c
        for i, gi in enumerate(g):
            if gi:
                r[i + k] = _sub(r[i + k], _mul(c, gi, u - 1), u - 1)
        _strip(r)
    if r:
        return None
    return _strip(q)


def _interpolate(h, x: int, u):
    """Rebuild a level-``u`` polynomial from its image at the main variable ``= x``."""
    f = []
    while h:
        g = _trunc(h, x, u - 1)
        f.append(g)
        h = _quo_ground(_sub(h, g, u - 1), x, u - 1)
    _strip(f)
    if f and _ground_lc(f, u) < 0:
        f = _neg(f, u)
    return f


def _primitive_ground(f, u):
    c = _ground_content(f, u)
    if c in (0, 1):
        return f
    return _quo_ground(f, c, u)


def _heu_gcd(f, g, u):
    """Return ``(h, f/h, g/h)`` with ``h = gcd(f, g)``."""
    if u < 0:
        h = igcd(f, g)
        if not h:
            return 0, 0, 0
        return h, f // h, g // h
    if not f and not g:
        return [], [], []
    if not f:
        s = 1 if _ground_lc(g, u) > 0 else -1
        return _mul_ground(g, s, u), [], _const(s, u)
    if not g:
        s = 1 if _ground_lc(f, u) > 0 else -1
        return _mul_ground(f, s, u), _const(s, u), []

    cont = igcd(_ground_content(f, u), _ground_content(g, u))
    if cont != 1:
        f, g = _quo_ground(f, cont, u), _quo_ground(g, cont, u)
    if u == 0 and (len(f) == 1 or len(g) == 1):
        return [cont], _mul_ground(f, 1, u), _mul_ground(g, 1, u)

    f_norm, g_norm = _max_norm(f, u), _max_norm(g, u)
    bound = 2 * min(f_norm, g_norm) + 29
    x = max(
        min(bound, 99 * isqrt(bound)),
        2 * min(f_norm // abs(_ground_lc(f, u)), g_norm // abs(_ground_lc(g, u))) + 2,
    )
    v = u - 1
    for _ in range(_HEU_TRIES):
        ff, gg = _eval(f, x, u), _eval(g, x, u)
        if ff and gg:
            hh, cff, cfg = _heu_gcd(ff, gg, v)
            h = _primitive_ground(_interpolate(hh, x, u), u)
            if h:
                cf_ = _div_exact(f, h, u)
                if cf_ is not None:
                    cg_ = _div_exact(g, h, u)
                    if cg_ is not None:
                        return _mul_ground(h, cont, u), cf_, cg_
            cff = _interpolate(cff, x, u)
            if cff:
                h = _div_exact(f, cff, u)
                if h is not None:
                    cg_ = _div_exact(g, h, u)
                    if cg_ is not None:
                        return _mul_ground(h, cont, u), cff, cg_
            cfg = _interpolate(cfg, x, u)
            if cfg:
                h = _div_exact(g, cfg, u)
                if h is not None:
                    cf_ = _div_exact(f, h, u)
                    if cf_ is not None:
                        return _mul_ground(h, cont, u), cf_, cfg
        x = 73794 * x * isqrt(isqrt(x)) // 27011
    raise _HeuristicFailed


def _const(c: int, u):
    if u < 0:
        return c
    return [_const(c, u - 1)] if c else []


# -- fallback: primitive Euclidean remainder sequence ----------------------


def _content(f, u):
    """GCD of the main-variable coefficients (a level ``u - 1`` polynomial)."""
    c = _zero(u - 1)
    for x in f:
        c = _prs_gcd(c, x, u - 1)
        if u - 1 < 0 and c == 1:
            break
    return c


def _primitive(f, u):
    c = _content(f, u)
    if not c:
        return c, f
    return c, [_div_exact(x, c, u - 1) for x in f]


def _prem(f, g, u):
    dg = len(g) - 1
    lc = g[-1]
    r = list(f)
    while r and len(r) - 1 >= dg:
        k = len(r) - 1 - dg
        shifted = [_zero(u - 1)] * k + _mul_coef(g, r[-1], u)
        r = _sub(_mul_coef(r, lc, u), shifted, u)
    return r


def _positive(f, u):
    if f and _ground_lc(f, u) < 0:
        return _neg(f, u)
    return f


def _prs_gcd(f, g, u):
    if u < 0:
        return igcd(f, g)
    if not f:
        return _positive(g, u)
    if not g:
        return _positive(f, u)
    cf, f = _primitive(f, u)
    cg, g = _primitive(g, u)
    c = _prs_gcd(cf, cg, u - 1)
    if len(f) < len(g):
        f, g = g, f
    while g:
        r = _prem(f, g, u)
        f, g = g, (_primitive(r, u)[1] if r else [])
    h = _positive(_primitive(f, u)[1], u)
    return _positive(_mul_coef(h, c, u), u)


# -- conversion -------------------------------------------------------------


def _from_items(items, nv: int):
    if nv == 0:
        return sum(c for _, c in items)
    groups: dict = {}
    for e, c in items:
        groups.setdefault(e[0], []).append((e[1:], c))
    out = [_zero(nv - 2)] * (max(groups) + 1)
    for d, sub in groups.items():
        out[d] = _from_items(sub, nv - 1)
    return out


def _to_terms(f, u, prefix, out):
    if u < 0:
        if f:
            out[prefix] = f
        return
    for i, c in enumerate(f):
        if c:
            _to_terms(c, u - 1, prefix + (i,), out)


def _dense(p: MultiPoly):
    """Shift ``p`` into the ordinary polynomial ring; return ``(dense, shift)``."""
    lo = p.min_exponents()
    items = [(tuple(a - b for a, b in zip(e, lo)), c) for e, c in p.terms.items()]
    return _from_items(items, len(p.vars)), lo


def _sparse(f, vars, shift=None) -> MultiPoly:
    out: dict = {}
    _to_terms(f, len(vars) - 1, (), out)
    poly = MultiPoly(vars, out)
    return poly.shift(shift) if shift is not None else poly


def _dense_gcd(f, g, u):
    try:
        return _heu_gcd(f, g, u)
    except _HeuristicFailed:
        h = _prs_gcd(f, g, u)
        return h, _div_exact(f, h, u), _div_exact(g, h, u)


def gcd_cofactors(a: MultiPoly, b: MultiPoly) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
    """``(g, a/g, b/g)`` where ``g`` is a gcd in the Laurent ring.

    ``g`` has no monomial factor; the cofactors carry the monomial parts.
    """
    if a.vars != b.vars:
        raise ValueError("variable mismatch")
    vars = a.vars
    if not vars:
        h, x, y = _heu_gcd(a.terms.get((), 0), b.terms.get((), 0), -1)
        mk = lambda c: MultiPoly.const(c, vars)
        return mk(h), mk(x), mk(y)
    if a.is_zero() or b.is_zero():
        if a.is_zero() and b.is_zero():
            z = MultiPoly.zero(vars)
            return z, z, z
        nz = b if a.is_zero() else a
        lo = nz.min_exponents()
        g = nz.shift(tuple(-x for x in lo))
        if g.leading_coefficient() < 0:
            g = -g
        one = MultiPoly.monomial(lo, 1 if g.leading_coefficient() * nz.leading_coefficient() > 0 else -1, vars)
        z = MultiPoly.zero(vars)
        return (g, z, one) if a.is_zero() else (g, one, z)
    u = len(vars) - 1
    fa, sa = _dense(a)
    fb, sb = _dense(b)
    h, ca, cb = _dense_gcd(fa, fb, u)
    return _sparse(h, vars), _sparse(ca, vars, sa), _sparse(cb, vars, sb)


def poly_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return gcd_cofactors(a, b)[0]


def try_exact_div(a: MultiPoly, b: MultiPoly) -> MultiPoly | None:
    """``a / b`` in the Laurent ring, or ``None`` if ``b`` does not divide ``a``."""
    if b.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    if a.is_zero():
        return a
    if b.is_monomial():
        (e, c), = b.terms.items()
        if any(v % c for v in a.terms.values()):
            return None
        neg = tuple(-x for x in e)
        return MultiPoly(a.vars, {tuple(x + y for x, y in zip(k, neg)): v // c for k, v in a.terms.items()})
    if not a.vars:
        q = _div_exact(a.terms.get((), 0), b.terms.get((), 0), -1)
        return None if q is None else MultiPoly.const(q, a.vars)
    fa, sa = _dense(a)
    fb, sb = _dense(b)
    q = _div_exact(fa, fb, len(a.vars) - 1)
    if q is None:
        return None
    return _sparse(q, a.vars, tuple(x - y for x, y in zip(sa, sb)))


def exact_div(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    q = try_exact_div(a, b)
    if q is None:
        raise ArithmeticError("inexact polynomial division")
    return q
