"""Path posets built from sign sequences, rationals and continued fractions.

A path poset is stored as its Hasse path read left to right: vertex labels
plus one orientation per edge, ``+1`` when the right vertex covers the left
one and ``-1`` otherwise.  Posets built from a continued fraction also keep
their segment structure ``S_1, ..., S_n``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations

from ratknot.cfalgebra import (
    ContinuedFraction,
    ExtendedRational,
    eval_cf,
    positive_cf,
)
from ratknot.errors import DomainError, InvalidCF, ResourceLimit

__all__ = [
    "Segment",
    "PathPoset",
    "FinitePoset",
    "ideal_cap",
    "poset_from_sign_sequence",
    "poset_from_rational",
    "poset_from_cf",
    "order_ideals",
    "count_order_ideals",
    "segment_ideals",
    "lambda_label",
    "oriented_equal",
    "abstract_isomorphic",
    "reduce_cf_step",
    "positive_reduction",
    "render_ascii",
    "render_dot",
    "rational_partner",
    "EMPTY_POSET",
]

DEFAULT_IDEAL_CAP = 10**7


def ideal_cap() -> int:
    """Enumeration cap, overridable through ``RATKNOT_IDEAL_CAP``."""
    raw = os.environ.get("RATKNOT_IDEAL_CAP")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_IDEAL_CAP


@dataclass(frozen=True)
class Segment:
    """Segment ``S_i`` of a continued-fraction poset."""

    index: int
    start: int  # l_{i-1}
    end: int  # l_i
    type: int  # t_i
    members: tuple[int, ...]  # left-to-right
    has_connector: bool  # vertex labelled l_i joins S_i to S_{i+1}

    def bottom_up(self) -> tuple[int, ...]:
        """Members ordered from the bottom, i.e. ``lambda(1), lambda(2), ...``."""
        return self.members if self.type == 1 else self.members[::-1]


@dataclass(frozen=True)
class PathPoset:
    labels: tuple[int, ...]
    orientations: tuple[int, ...]
    segments: tuple[Segment, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise DomainError("path poset labels must be distinct")
        if len(self.orientations) != max(0, len(self.labels) - 1):
            raise DomainError("need exactly one orientation per Hasse edge")

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def elements(self) -> tuple[int, ...]:
        return self.labels

    def covers(self) -> list[tuple[int, int]]:
        """Cover relations ``(lower, upper)`` in traversal order."""
        out = []
        for i, o in enumerate(self.orientations):
            a, b = self.labels[i], self.labels[i + 1]
            out.append((a, b) if o == 1 else (b, a))
        return out

    def heights(self) -> list[int]:
        h = [0]
        for o in self.orientations:
            h.append(h[-1] + o)
        return h


@dataclass(frozen=True)
class FinitePoset:
    """A general finite poset given by its cover relations ``(lower, upper)``."""

    elements: tuple
    cover_pairs: tuple[tuple, tuple] | tuple = ()

    def covers(self):
        return list(self.cover_pairs)


EMPTY_POSET = PathPoset((), ())


def poset_from_sign_sequence(seq) -> PathPoset:
    seq = tuple(int(s) for s in seq)
    if any(s not in (1, -1) for s in seq):
        raise DomainError("sign sequence entries must be +1 or -1")
    return PathPoset(tuple(range(1, len(seq) + 2)), seq)


def poset_from_rational(r: ExtendedRational) -> PathPoset:
    if r.is_infinite or (r.p == 1 and r.q == 1):
        return EMPTY_POSET
    if not r.at_least_one():
        raise DomainError(f"Q({r}) needs r >= 1")
    return poset_from_sign_sequence(positive_cf(r).inner_sign_sequence)


def _check_valid(cf: ContinuedFraction) -> None:
    if not cf.is_poset_valid:
        raise InvalidCF(f"{cf} does not satisfy the path-poset conditions")


def poset_from_cf(cf: ContinuedFraction) -> PathPoset:
    """Labelled path poset ``Q[c_1, ..., c_n]``."""
    _check_valid(cf)
    n = len(cf)
    ls = cf.partial_sums
    ts = cf.types
    labels: list[int] = []
    orients: list[int] = []
    segments = []
    pending: int | None = None  # orientation of the edge into the next vertex

    def push(label: int) -> None:
        if pending is not None:
            orients.append(pending)
        labels.append(label)

    for i in range(1, n + 1):
        t = ts[i]
        if i > 1:
            pending = -t if ts[i - 1] == t else t
        members = tuple(range(ls[i - 1] + 1, ls[i]))
        for lab in members:
            push(lab)
            pending = t
        connector = i < n and ts[i + 1] != t
        if connector:
            push(ls[i])
            pending = t
        segments.append(Segment(i, ls[i - 1], ls[i], t, members, connector))
    return PathPoset(tuple(labels), tuple(orients), tuple(segments))


def lambda_label(cf: ContinuedFraction, m: int, j: int) -> int:
    """Label of the ``j``-th vertex from the bottom of ``S_m``."""
    if not 1 <= m <= len(cf):
        raise IndexError(f"segment index {m} out of range")
    if not 1 <= j <= abs(cf[m - 1]) - 1:
        raise IndexError(f"S_{m} has no vertex {j}")
    ls = cf.partial_sums
    return ls[m - 1] + j if cf.types[m] == 1 else ls[m] - j


def count_order_ideals(poset: PathPoset) -> int:
    if not len(poset):
        return 1
    out0, out1 = 1, 1  # ideals of the prefix with last vertex out / in
    for o in poset.orientations:
        if o == 1:  # next covers current: next in => current in
            out0, out1 = out0 + out1, out1
        else:
            out0, out1 = out0, out0 + out1
    return out0 + out1


def _path_ideals(poset: PathPoset) -> list[frozenset]:
    k = len(poset)
    if k == 0:
        return [frozenset()]
    vectors: list[tuple[int, ...]] = [(0,), (1,)]
    for o in poset.orientations:
        nxt = []
        for v in vectors:
            last = v[-1]
            for x in (0, 1):
                if (o == 1 and x > last) or (o == -1 and x < last):
                    continue
                nxt.append(v + (x,))
        vectors = nxt
    vectors.sort()
    labels = poset.labels
    return [frozenset(labels[i] for i, x in enumerate(v) if x) for v in vectors]


def _general_ideals(poset: FinitePoset) -> list[frozenset]:
    elems = list(poset.elements)
    below: dict = {e: set() for e in elems}
    for lo, hi in poset.covers():
        below[hi].add(lo)
    out = []
    for r in range(len(elems) + 1):
        for subset in combinations(elems, r):
            s = set(subset)
            if all(below[e] <= s for e in s):
                out.append(frozenset(s))
    return out


def order_ideals(poset, cap: int | None = None) -> list[frozenset]:
    """All order ideals, in lexicographic membership order for path posets."""
    cap = ideal_cap() if cap is None else cap
    if isinstance(poset, PathPoset):
        count = count_order_ideals(poset)
        if count > cap:
            raise ResourceLimit(f"{count} order ideals exceed the cap of {cap}")
        return _path_ideals(poset)
    if 2 ** len(poset.elements) > cap:
        raise ResourceLimit("general poset too large to enumerate")
    return _general_ideals(poset)


def segment_ideals(cf: ContinuedFraction, m: int) -> list[frozenset]:
    """The chain of ideals of ``S_m``: empty, then growing from the bottom."""
    _check_valid(cf)
    if not 1 <= m <= len(cf):
        raise IndexError(f"segment index {m} out of range")
    size = abs(cf[m - 1]) - 1
    bottom = [lambda_label(cf, m, j) for j in range(1, size + 1)]
    return [frozenset(bottom[:k]) for k in range(size + 1)]


def oriented_equal(a: PathPoset, b: PathPoset) -> bool:
    return a.orientations == b.orientations and len(a) == len(b)


def abstract_isomorphic(a: PathPoset, b: PathPoset) -> bool:
    if len(a) != len(b):
        return False
    if a.orientations == b.orientations:
        return True
    return a.orientations == tuple(-o for o in reversed(b.orientations))


def reduce_cf_step(cf: ContinuedFraction, k: int) -> ContinuedFraction:
    """Rewrite a negative term into positive ones.

    For ``k >= 1`` and ``c_{k+1} < 0`` this applies
    ``[a_1..a_k, c_{k+1}, ...] = [a_1..a_{k-1}, a_k - 1, 1, -c_{k+1} - 1, -c_{k+2}, ...]``
    (same value).  For ``k = 0`` and ``c_1 < 0`` it returns
    ``[1, -c_1 - 1, -c_2, ...]``, which evaluates to ``p/(q + p)``; when
    ``c_1 = -1`` the zero term this would create is folded away.
    """
    terms = cf.terms
    if not 0 <= k < len(terms):
        raise IndexError(f"no term c_{k + 1} in {cf}")
    if terms[k] > 0:
        raise DomainError(f"c_{k + 1} = {terms[k]} is positive")
    if terms[k] == 0:
        raise InvalidCF("zero term")
    if k == 0 and terms[0] == -1:
        # [1, 0, y, ...] = [1 + y, ...] and [1, 0] = infinity
        if len(terms) == 1:
            return ContinuedFraction(())
        new = (1 - terms[1],) + tuple(-c for c in terms[2:])
    elif k == 0:
        new = (1, -terms[0] - 1) + tuple(-c for c in terms[1:])
    else:
        new = (
            terms[: k - 1]
            + (terms[k - 1] - 1, 1, -terms[k] - 1)
            + tuple(-c for c in terms[k + 1 :])
        )
    return ContinuedFraction(new)


def _fold_zeros(terms: tuple[int, ...]) -> tuple[int, ...]:
    """Remove zero terms: ``[.., x, 0, y, ..] = [.., x + y, ..]``, ``[.., x, 0] = [..]``."""
    terms = list(terms)
    while 0 in terms:
        i = terms.index(0)
        if i == 0:
            raise InvalidCF("leading zero term")
        if i == len(terms) - 1:
            del terms[i - 1 :]
        else:
            terms[i - 1 : i + 2] = [terms[i - 1] + terms[i + 1]]
    return tuple(terms)


def positive_reduction(cf: ContinuedFraction) -> tuple[ContinuedFraction, bool]:
    """Apply :func:`reduce_cf_step` at the first negative term until none remain.

    Returns the positive continued fraction and whether the prefix identity
    (which changes the value to ``p/(q+p)``) was used.  A step whose
    ``a_k`` is 1 leaves a zero term; it is folded into its neighbours, which
    keeps the value.
    """
    used_prefix = False
    for _ in range(2 * len(cf) + 2):
        neg = next((i for i, c in enumerate(cf.terms) if c < 0), None)
        if neg is None:
            return cf, used_prefix
        if neg == 0:
            used_prefix = True
        cf = ContinuedFraction(_fold_zeros(reduce_cf_step(cf, neg).terms))
    raise InvalidCF(f"reduction of {cf} did not terminate")


def render_ascii(poset: PathPoset) -> str:
    """Hasse path drawn on diagonals, higher elements on higher rows."""
    if not len(poset):
        return "(empty poset)"
    hs = poset.heights()
    top, bottom = max(hs), min(hs)
    width = max(len(str(lab)) for lab in poset.labels)
    step = width + 1
    rows = 2 * (top - bottom) + 1
    ncols = step * len(poset) + 1
    grid = [[" "] * ncols for _ in range(rows)]
    for i, (lab, h) in enumerate(zip(poset.labels, hs)):
        r = 2 * (top - h)
        text = str(lab).rjust(width)
        c0 = i * step
        grid[r][c0 : c0 + width] = list(text)
        if i < len(poset) - 1:
            o = poset.orientations[i]
            grid[r - 1 if o == 1 else r + 1][c0 + width] = "/" if o == 1 else "\\"
    return "\n".join("".join(row).rstrip() for row in grid)


def render_dot(poset: PathPoset) -> str:
    lines = ["digraph poset {"]
    if len(poset) == 1:
        lines.append(f"  {poset.labels[0]};")
    for lo, hi in poset.covers():
        lines.append(f"  {lo} -> {hi};")
    lines.append("}")
    return "\n".join(lines)


def rational_partner(cf: ContinuedFraction) -> ExtendedRational:
    """The rational ``r >= 1`` whose ``Q(r)`` the poset of ``cf`` should match."""
    r = eval_cf(cf)
    if r.q < 0:
        return ExtendedRational.of(r.p, r.q + r.p)
    return r
