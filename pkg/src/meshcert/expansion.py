"""Indicator expansion of the elimination probabilities.

``h_n(a, b, c)`` (player 1 eliminated in exactly round ``n``) unrolls into
``(1/6)^n`` times a sum of indicators of homogeneous polyhedral regions.
The recursion substitutes the six successor stack triples of one betting
round; the base case compares player 1's stack with the other two.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from .algebra import Ineq, LinForm, Point, Region, V, X, Y, Z, region_feasible

__all__ = [
    "Substitution",
    "IDENTITY",
    "SWAP_XY",
    "ROT_YZX",
    "ROT_ZYX",
    "IndicatorTerm",
    "PiecewiseSum",
    "expand_h",
    "build_delta",
    "build_level_diff",
    "evaluate",
    "evaluate_many",
    "alpha",
    "level_weight",
]

SIXTH = Fraction(1, 6)


def alpha(n: int) -> Fraction:
    """Tail allowance ``(1/2)^n * 4/5``."""
    if n < 1:
        raise ValueError("alpha is defined for n >= 1")
    return Fraction(4, 5 * 2**n)


def level_weight(level: int) -> Fraction:
    return SIXTH**level


@dataclass(frozen=True, order=True)
class Substitution:
    """The three stack expressions fed to ``h_n``."""

    s1: LinForm
    s2: LinForm
    s3: LinForm

    @property
    def forms(self) -> tuple[LinForm, LinForm, LinForm]:
        return (self.s1, self.s2, self.s3)

    def apply(self, p: Point) -> tuple[Fraction, Fraction, Fraction]:
        return tuple(f(p) for f in self.forms)

    def __str__(self) -> str:
        return "({}, {}, {})".format(*self.forms)


IDENTITY = Substitution(X, Y, Z)
SWAP_XY = Substitution(Y, X, Z)
ROT_YZX = Substitution(Y, Z, X)
ROT_ZYX = Substitution(Z, Y, X)


@dataclass(frozen=True, order=True)
class IndicatorTerm:
    """``sign * (1/6)^level * 1[region]``."""

    level: int
    sign: int
    region: Region = field(compare=False)

    @property
    def coefficient(self) -> Fraction:
        return self.sign * level_weight(self.level)

    def sort_key(self) -> tuple:
        return (self.level, -self.sign, self.region.key)


@dataclass(frozen=True)
class PiecewiseSum:
    """``constant + sum(term.coefficient * 1[term.region])`` on ``ambient``."""

    ambient: Region
    terms: tuple[IndicatorTerm, ...]
    constant: Fraction = Fraction(0)

    def shifted(self, c) -> PiecewiseSum:
        return PiecewiseSum(self.ambient, self.terms, self.constant + Fraction(c))

    def positive_terms(self) -> list[IndicatorTerm]:
        return [t for t in self.terms if t.sign > 0]

    def negative_terms(self) -> list[IndicatorTerm]:
        return [t for t in self.terms if t.sign < 0]

    def __call__(self, p: Point) -> Fraction:
        return evaluate(self, p)


@lru_cache(maxsize=None)
def _children(triple: tuple[LinForm, LinForm, LinForm]) -> tuple:
    """The six argument triples of the recursion, one per (pair, winner)."""
    a, b, c = triple
    return (
        (2 * a, b - a, c),
        (2 * a, b, c - a),
        (a - b, 2 * b, c),
        (a, 2 * b, c - b),
        (a - c, b, 2 * c),
        (a, b - c, 2 * c),
    )


def _with_positivity(path: Region, triple, ambient: Region, prune: bool) -> Optional[Region]:
    """Conjoin ``a, b, c > 0`` onto ``path``; ``None`` when the result is empty."""
    if any(f.is_zero() for f in triple):
        return None
    new = [Ineq.gt(f) for f in triple]
    region = path.add(*new)
    if not region_feasible(region, ambient):
        return None if prune else region
    kept = list(dict.fromkeys(c for c in new if c not in path.constraints))
    for c in list(kept):
        others = path.add(*(k for k in kept if k != c))
        if not region_feasible(others.add(c.negate()), ambient):
            kept.remove(c)
    return path.add(*kept)


def expand_h(
    n: int, sub: Substitution = IDENTITY, ambient: Region = V, prune: bool = True
) -> list[IndicatorTerm]:
    """Unroll ``h_n(sub)`` into level-``n`` indicator terms.

    Each term's region conjoins strict positivity of the stack triple at every
    recursion depth with one final ``a <= b`` or ``a <= c`` comparison.  With
    ``prune`` set, terms (and whole subtrees) empty inside ``ambient`` are
    dropped; without it they are kept, which never changes a value.
    """
    if n < 1:
        raise ValueError("expand_h needs n >= 1")
    out: list[IndicatorTerm] = []

    def rec(k: int, triple, path: Region) -> None:
        region = _with_positivity(path, triple, ambient, prune)
        if region is None:
            return
        a, b, c = triple
        if k == 1:
            for other in (b, c):
                diff = other - a
                if diff.is_zero():
                    term_region = region
                else:
                    term_region = region.add(Ineq.ge(diff))
                if prune and not region_feasible(term_region, ambient):
                    continue
                out.append(IndicatorTerm(n, 1, term_region))
            return
        for child in _children(triple):
            rec(k - 1, child, region)

    rec(n, sub.forms, Region())
    out.sort(key=IndicatorTerm.sort_key)
    return out


def build_delta(
    n: int,
    s: Substitution = IDENTITY,
    t: Substitution = SWAP_XY,
    ambient: Region = V,
    prune: bool = True,
) -> PiecewiseSum:
    """``sum_{j<=n} h_j(s) - sum_{j<=n} h_j(t)`` as a signed indicator sum."""
    if n < 1:
        raise ValueError("build_delta needs n >= 1")
    terms: list[IndicatorTerm] = []
    for j in range(1, n + 1):
        terms.extend(expand_h(j, s, ambient, prune))
        terms.extend(IndicatorTerm(j, -1, tm.region) for tm in expand_h(j, t, ambient, prune))
    terms.sort(key=IndicatorTerm.sort_key)
    return PiecewiseSum(ambient, tuple(terms))


def build_level_diff(
    n: int, s: Substitution = IDENTITY, t: Substitution = SWAP_XY, ambient: Region = V
) -> PiecewiseSum:
    """``h_n(s) - h_n(t)``: only the level-``n`` terms."""
    terms = list(expand_h(n, s, ambient))
    terms.extend(IndicatorTerm(n, -1, tm.region) for tm in expand_h(n, t, ambient))
    terms.sort(key=IndicatorTerm.sort_key)
    return PiecewiseSum(ambient, tuple(terms))


def evaluate(ps: PiecewiseSum, p: Point) -> Fraction:
    if not ps.ambient.sat(p):
        raise ValueError(f"point {p} lies outside the ambient region")
    total = ps.constant
    for term in ps.terms:
        if term.region.sat(p):
            total += term.coefficient
    return total


_INT64_SAFE = 1 << 60


def evaluate_many(ps: PiecewiseSum, points: Sequence[Sequence[int]], chunk: int = 20000) -> list[Fraction]:
    """Exact values of ``ps`` at many integer points, vectorised.

    Values are accumulated as integer numerators over ``6^L`` (``L`` the
    deepest level), so numpy int64 arithmetic stays exact.  Points are not
    checked against the ambient region.  Falls back to :func:`evaluate` when
    coordinates are too large for int64.
    """
    pts = [tuple(int(v) for v in p) for p in points]
    if not pts:
        return []
    if not ps.terms:
        return [ps.constant] * len(pts)
    forms: dict[Ineq, int] = {}
    term_rows = []
    for term in ps.terms:
        idx = [forms.setdefault(c, len(forms)) for c in term.region.constraints]
        term_rows.append(idx)
    coef = np.array([c.form.coeffs for c in forms], dtype=np.int64)
    strict = np.array([c.strict for c in forms], dtype=bool)
    max_coef = int(np.abs(coef).max()) if len(forms) else 0
    max_pt = max(abs(v) for p in pts for v in p)
    if 3 * max_coef * max_pt >= _INT64_SAFE:
        return [_eval_unchecked(ps, p) for p in pts]
    depth = max(t.level for t in ps.terms)
    denom = 6**depth
    if denom >= _INT64_SAFE // max(1, len(ps.terms)):
        return [_eval_unchecked(ps, p) for p in pts]
    weights = [t.sign * 6 ** (depth - t.level) for t in ps.terms]
    out: list[Fraction] = []
    arr_all = np.array(pts, dtype=np.int64)
    for start in range(0, len(pts), chunk):
        arr = arr_all[start : start + chunk]
        vals = arr @ coef.T
        truth = np.where(strict, vals > 0, vals >= 0)
        acc = np.zeros(len(arr), dtype=np.int64)
        for w, idx in zip(weights, term_rows):
            if idx:
                acc += w * np.all(truth[:, idx], axis=1)
            else:
                acc += w
        out.extend(ps.constant + Fraction(int(a), denom) for a in acc)
    return out


def _eval_unchecked(ps: PiecewiseSum, p: Sequence[int]) -> Fraction:
    pt = Point.of(*p)
    total = ps.constant
    for term in ps.terms:
        if term.region.sat(pt):
            total += term.coefficient
    return total
