"""Sweeps and oracle-equivalence checks shared by ``ratknot verify`` and the tests.

Every check takes one picklable case and returns ``(ok, detail)`` so suites
can be farmed out to worker processes and reported in case order.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import gcd
from typing import Callable, Iterable, Iterator

from ratknot.algebra import MultiPoly, bracket
from ratknot.cfalgebra import (
    ContinuedFraction,
    ExtendedRational,
    even_cf,
    eval_cf,
    oriented_link_isotopic,
    positive_cf,
)
from ratknot.fpoly import (
    FORMAL_VARS,
    Specialization,
    f_poly_brute,
    f_poly_recursive,
    f_tilde_recursive,
    recursion_coefficients,
    segment_specialized_product,
    segment_specialized_sum,
    specialize_f,
    w_to_field,
)
from ratknot.invariants import (
    alexander,
    alexander_via_corollary,
    extension_identity_holds,
    homfly,
    homfly_oracle,
    homfly_theorem,
    invert_t,
    unit_equivalent,
)
from ratknot.poset import oriented_equal, poset_from_cf, poset_from_rational, rational_partner

__all__ = [
    "DEFAULT_SEED",
    "even_sweep",
    "random_even_cfs",
    "coprime_fractions",
    "expansions",
    "Suite",
    "build_suites",
    "run_suite",
]

DEFAULT_SEED = 20240917
SWEEP_ENTRIES = (-4, -2, 2, 4)


def even_sweep(entries=SWEEP_ENTRIES, max_len: int = 5) -> list[ContinuedFraction]:
    """Every CF of length ``1..max_len`` with terms from ``entries``."""
    out = []
    for n in range(1, max_len + 1):
        out.extend(ContinuedFraction(t) for t in itertools.product(entries, repeat=n))
    return out


def random_even_cfs(count: int = 200, max_abs: int = 8, max_len: int = 8, seed: int = DEFAULT_SEED):
    rng = random.Random(seed)
    choices = [b for b in range(-max_abs, max_abs + 1) if b and b % 2 == 0]
    return [
        ContinuedFraction(tuple(rng.choice(choices) for _ in range(rng.randint(1, max_len))))
        for _ in range(count)
    ]


def coprime_fractions(max_p: int, min_p: int = 2) -> Iterator[ExtendedRational]:
    """Coprime ``p/q`` with ``min_p <= p <= max_p`` and ``0 < |q| <= p``."""
    for p in range(min_p, max_p + 1):
        for q in range(-p, p + 1):
            if q and gcd(p, q) == 1:
                yield ExtendedRational(p, q)


def expansions(r: ExtendedRational) -> list[ContinuedFraction]:
    """The positive and the even expansion of ``r``, whichever exist."""
    out = []
    if r.at_least_one():
        out.append(positive_cf(r))
    if r.abs_at_least_one() and not (r.p % 2 and r.q % 2):
        out.append(even_cf(r))
    return out


# -- checks ---------------------------------------------------------------------


def _sign(cf: ContinuedFraction) -> int:
    return 1 if cf[0] > 0 else -1


def check_theorem(terms) -> tuple[bool, str]:
    cf = ContinuedFraction(terms)
    a, b = homfly_theorem(cf), homfly_oracle(cf)
    return a == b, f"{cf}: theorem {a} != oracle {b}"


def check_f_recursion(terms) -> tuple[bool, str]:
    cf = ContinuedFraction(terms)
    a, b = f_poly_recursive(cf), f_poly_brute(poset_from_cf(cf))
    return a == b, f"{cf}: recursion {a} != brute force {b}"


def check_poset_theorem(terms) -> tuple[bool, str]:
    cf = ContinuedFraction(terms)
    r = rational_partner(cf)
    ok = oriented_equal(poset_from_cf(cf), poset_from_rational(r))
    return ok, f"{cf}: orientation differs from Q({r})"


def check_numerator(terms) -> tuple[bool, str]:
    cf = ContinuedFraction(terms)
    F = f_poly_recursive(cf)
    p = eval_cf(cf).p
    ok = F.is_final_form() and F.evaluate() == p
    return ok, f"{cf}: F(1) = {F.evaluate()} but p = {p}"


def check_corollary(terms) -> tuple[bool, str]:
    cf = ContinuedFraction(terms)
    a = alexander_via_corollary(cf)
    b = alexander(eval_cf(cf))
    if a != b:
        return False, f"{cf}: corollary {a} != alexander {b}"
    if not b.is_zero() and not unit_equivalent(b, invert_t(b)):
        return False, f"{cf}: alexander {b} is not symmetric"
    return True, ""


def check_extension(terms) -> tuple[bool, str]:
    cf = ContinuedFraction(terms)
    return extension_identity_holds(cf), f"{cf}: extension identity fails"


def check_specialized(terms) -> tuple[bool, str]:
    cf = ContinuedFraction(terms)
    spec = Specialization.homfly(_sign(cf))
    brute = specialize_f(f_poly_brute(poset_from_cf(cf)), spec)
    if f_tilde_recursive(cf) != brute:
        return False, f"{cf}: specialized recursion differs from brute force"
    for m in range(2, len(cf) + 1):
        b = abs(cf[m - 1])
        want_sum = w_to_field(_segment_sum_closed(b))
        want_prod = w_to_field(_segment_product_closed(b))
        if segment_specialized_sum(cf, m) != want_sum:
            return False, f"{cf}: segment {m} sum"
        if segment_specialized_product(cf, m) != want_prod:
            return False, f"{cf}: segment {m} product"
    if cf[0] > 0:
        want = w_to_field(_first_product_closed(cf[0]))
        if segment_specialized_product(cf, 1) != want:
            return False, f"{cf}: first segment product"
    if len(cf) >= 2:
        mu, nu, _ = recursion_coefficients(cf)
        f0 = f_tilde_recursive(cf)
        f1 = f_tilde_recursive(ContinuedFraction(cf.terms[:-1]))
        f2 = f_tilde_recursive(ContinuedFraction(cf.terms[:-2]))
        seg = segment_specialized_sum(cf, len(cf))
        if f0 != mu * f2 + nu * seg * f1:
            return False, f"{cf}: mu/nu table row"
    return True, ""


def check_isotopy(pair) -> tuple[bool, str]:
    (p1, q1), (p2, q2) = pair
    r, s = ExtendedRational(p1, q1), ExtendedRational(p2, q2)
    a, b = homfly(r), homfly(s)
    return a == b, f"{r} ~ {s} but HOMFLY differs"


def _segment_sum_closed(b: int):
    one = MultiPoly.one(FORMAL_VARS)
    q_inv = MultiPoly.monomial((0, -2, 0), 1, FORMAL_VARS)
    l2 = MultiPoly.monomial((2, 0, 0), 1, FORMAL_VARS)
    return (one - q_inv) * bracket(b // 2, l2)


def _segment_product_closed(b: int):
    return MultiPoly.monomial((b - 2, -2, 0), -1, FORMAL_VARS)


def _first_product_closed(b: int):
    return MultiPoly.monomial((b, 0, -1), 1, FORMAL_VARS)


# -- suites ----------------------------------------------------------------------


@dataclass
class Suite:
    name: str
    check: Callable
    cases: list


def _isotopy_pairs(max_p: int) -> list:
    reps = [(p, q) for p in range(0, max_p + 1) for q in range(-2 * p - 1, 2 * p + 2) if gcd(p, q) == 1]
    pairs = []
    for a, b in itertools.combinations(reps, 2):
        if a[0] == b[0] and oriented_link_isotopic(ExtendedRational(*a), ExtendedRational(*b)):
            pairs.append((a, b))
    return pairs


def build_suites(max_num: int = 50, sweep_depth: int = 4, seed: int = DEFAULT_SEED, random_count: int = 200) -> list[Suite]:
    sweep = [cf.terms for cf in even_sweep(max_len=sweep_depth)]
    randoms = [cf.terms for cf in random_even_cfs(random_count, seed=seed)]
    fraction_cfs = [
        cf.terms for r in coprime_fractions(max_num) for cf in expansions(r)
    ]
    return [
        Suite("theorem = skein oracle", check_theorem, sweep + randoms),
        Suite("F recursion = brute force", check_f_recursion, fraction_cfs),
        Suite("poset of CF = poset of rational", check_poset_theorem, fraction_cfs),
        Suite("F(1) = numerator", check_numerator, fraction_cfs),
        Suite("Alexander corollary and symmetry", check_corollary, sweep + randoms),
        Suite("specialized recursion and segment identities", check_specialized, sweep),
        Suite("skein extension identity", check_extension, sweep),
        Suite("isotopy invariance", check_isotopy, _isotopy_pairs(min(max_num, 25))),
    ]


def _apply(job):
    check, case = job
    try:
        return check(case)
    except Exception as exc:  # a crash is a failed case, reported with its input
        return False, f"{case}: {type(exc).__name__}: {exc}"


def run_suite(suite: Suite, pool=None) -> tuple[int, int, str | None]:
    """Run every case in order; return ``(passed, total, first_failure)``."""
    jobs: Iterable = ((suite.check, c) for c in suite.cases)
    results = pool.imap(_apply, jobs, chunksize=16) if pool is not None else map(_apply, jobs)
    passed = 0
    first = None
    for idx, (ok, detail) in enumerate(results):
        if ok:
            passed += 1
        elif first is None:
            first = f"case {idx}: {detail}"
    return passed, len(suite.cases), first
