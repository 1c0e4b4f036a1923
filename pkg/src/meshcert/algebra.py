"""Exact homogeneous linear algebra over (x, y, z).

Everything here is exact: rationals are :class:`fractions.Fraction`, form
coefficients are Python integers.  Regions are conjunctions of sign
constraints ``f > 0`` / ``f >= 0`` on homogeneous linear forms, and
feasibility is decided by Fourier-Motzkin elimination with strict/weak
bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

Rat = Fraction

__all__ = [
    "Rat",
    "LinForm",
    "Ineq",
    "Region",
    "Point",
    "X",
    "Y",
    "Z",
    "V",
    "eval_form",
    "region_feasible",
    "region_interior_point",
    "implies",
    "region_intersect",
    "affine_feasible_point",
]


def _gcd3(a: int, b: int, c: int) -> int:
    return gcd(gcd(abs(a), abs(b)), abs(c))


@dataclass(frozen=True, order=True)
class LinForm:
    """The homogeneous linear form ``a*x + b*y + c*z`` with integer coefficients."""

    a: int = 0
    b: int = 0
    c: int = 0

    @property
    def coeffs(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0

    def __add__(self, other: LinForm) -> LinForm:
        return LinForm(self.a + other.a, self.b + other.b, self.c + other.c)

    def __sub__(self, other: LinForm) -> LinForm:
        return LinForm(self.a - other.a, self.b - other.b, self.c - other.c)

    def __neg__(self) -> LinForm:
        return LinForm(-self.a, -self.b, -self.c)

    def __mul__(self, k: int) -> LinForm:
        return LinForm(k * self.a, k * self.b, k * self.c)

    __rmul__ = __mul__

    def __call__(self, p: Point) -> Fraction:
        return eval_form(self, p)

    def primitive(self) -> LinForm:
        """Divide out the gcd of the coefficients (orientation kept)."""
        g = _gcd3(self.a, self.b, self.c)
        if g <= 1:
            return self
        return LinForm(self.a // g, self.b // g, self.c // g)

    def canonical(self) -> tuple[LinForm, int]:
        """Return ``(h, sign)`` with ``self = sign * k * h`` for some ``k > 0``.

        ``h`` is gcd-reduced with its first nonzero coefficient positive.
        """
        p = self.primitive()
        for coef in p.coeffs:
            if coef:
                return (p, 1) if coef > 0 else (-p, -1)
        return p, 0

    def __str__(self) -> str:
        parts = []
        for coef, name in zip(self.coeffs, "xyz"):
            if coef == 0:
                continue
            sign = "-" if coef < 0 else "+"
            mag = abs(coef)
            body = name if mag == 1 else f"{mag}{name}"
            parts.append((sign, body))
        if not parts:
            return "0"
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += sign + body
        return text


X = LinForm(1, 0, 0)
Y = LinForm(0, 1, 0)
Z = LinForm(0, 0, 1)


@dataclass(frozen=True, order=True)
class Point:
    x: Fraction
    y: Fraction
    z: Fraction

    def __post_init__(self):
        for name in ("x", "y", "z"):
            v = getattr(self, name)
            if not isinstance(v, Fraction):
                object.__setattr__(self, name, Fraction(v))

    @classmethod
    def of(cls, x, y, z) -> Point:
        return cls(Fraction(x), Fraction(y), Fraction(z))

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.x, self.y, self.z)

    def scale(self, k) -> Point:
        k = Fraction(k)
        return Point(self.x * k, self.y * k, self.z * k)

    def primitive(self) -> Point:
        """The positive multiple of this point with coprime integer coordinates."""
        den = lcm(self.x.denominator, self.y.denominator, self.z.denominator)
        ints = [int(v * den) for v in self.as_tuple()]
        g = _gcd3(*ints) or 1
        return Point.of(*(i // g for i in ints))

    def __str__(self) -> str:
        return "({}, {}, {})".format(*self.as_tuple())


def eval_form(f: LinForm, p: Point) -> Fraction:
    return f.a * p.x + f.b * p.y + f.c * p.z


@dataclass(frozen=True, order=True)
class Ineq:
    """``form > 0`` (strict) or ``form >= 0``; the form is stored gcd-reduced.

    Constraints written with ``<=``/``<`` are stored negated, so only the two
    relations ``>=`` and ``>`` exist.
    """

    form: LinForm
    strict: bool = False

    def __post_init__(self):
        if self.form.is_zero():
            raise ValueError("inequality on the zero form is constant")
        object.__setattr__(self, "form", self.form.primitive())

    @classmethod
    def ge(cls, f: LinForm) -> Ineq:
        return cls(f, False)

    @classmethod
    def gt(cls, f: LinForm) -> Ineq:
        return cls(f, True)

    @classmethod
    def le(cls, f: LinForm) -> Ineq:
        return cls(-f, False)

    @classmethod
    def lt(cls, f: LinForm) -> Ineq:
        return cls(-f, True)

    @property
    def hyperplane(self) -> LinForm:
        return self.form.canonical()[0]

    @property
    def orientation(self) -> int:
        return self.form.canonical()[1]

    def negate(self) -> Ineq:
        """The complement: not(f >= 0) is -f > 0, not(f > 0) is -f >= 0."""
        return Ineq(-self.form, not self.strict)

    def sat(self, p: Point) -> bool:
        v = eval_form(self.form, p)
        return v > 0 if self.strict else v >= 0

    def sat_int(self, v: Sequence[int]) -> bool:
        a, b, c = self.form.coeffs
        s = a * v[0] + b * v[1] + c * v[2]
        return s > 0 if self.strict else s >= 0

    def __str__(self) -> str:
        return f"{self.form} {'>' if self.strict else '>='} 0"


class Region:
    """A finite conjunction of :class:`Ineq`, deduplicated."""

    __slots__ = ("constraints", "_key")

    def __init__(self, constraints: Iterable[Ineq] = ()):
        self.constraints: frozenset[Ineq] = frozenset(constraints)
        self._key: Optional[tuple] = None

    @property
    def key(self) -> tuple:
        """A total-order key (sorted constraint list)."""
        if self._key is None:
            self._key = tuple(sorted(self.constraints))
        return self._key

    def __len__(self) -> int:
        return len(self.constraints)

    def __iter__(self):
        return iter(self.key)

    def __eq__(self, other) -> bool:
        return isinstance(other, Region) and self.constraints == other.constraints

    def __hash__(self) -> int:
        return hash(self.constraints)

    def __lt__(self, other: Region) -> bool:
        return self.key < other.key

    def __and__(self, other: Region) -> Region:
        return Region(self.constraints | other.constraints)

    def add(self, *ineqs: Ineq) -> Region:
        return Region(self.constraints.union(ineqs))

    def sat(self, p: Point) -> bool:
        return all(c.sat(p) for c in self.constraints)

    def __repr__(self) -> str:
        return "Region{" + ", ".join(str(c) for c in self.key) + "}"


# the ambient domain 0 < x < y < z
V = Region([Ineq.gt(X), Ineq.gt(Y - X), Ineq.gt(Z - Y)])


def region_intersect(r1: Region, r2: Region) -> Region:
    return r1 & r2


# ---------------------------------------------------------------------------
# Fourier-Motzkin


def _normalize_row(coefs: Sequence[Fraction], const: Fraction) -> tuple:
    """Scale a row by a positive factor to coprime integers."""
    vals = list(coefs) + [const]
    den = 1
    for v in vals:
        den = lcm(den, Fraction(v).denominator)
    ints = [int(Fraction(v) * den) for v in vals]
    g = 0
    for i in ints:
        g = gcd(g, abs(i))
    if g > 1:
        ints = [i // g for i in ints]
    return tuple(ints[:-1]), ints[-1]


def affine_feasible_point(rows: Sequence[tuple], nvars: int) -> Optional[tuple]:
    """Find a point of ``{v : coefs . v + const (> | >=) 0 for each row}``.

    ``rows`` holds ``(coefs, const, strict)`` triples.  Returns a tuple of
    Fractions or ``None`` when the system is infeasible.  Variables are
    eliminated last-to-first; back substitution takes the midpoint of each
    bounded interval, so weak constraints end up strict whenever the system
    allows it.
    """
    norm = {}
    for coefs, const, strict in rows:
        key = _normalize_row(coefs, const)
        norm[key] = norm.get(key, False) or strict
    return _fm_solve([(c, k, s) for (c, k), s in norm.items()], nvars)


def _fm_solve(rows, nvars):
    if nvars == 0:
        for _, const, strict in rows:
            if const < 0 or (strict and const == 0):
                return None
        return ()
    j = nvars - 1
    lower, upper, rest = [], [], []
    for row in rows:
        coefs = row[0]
        if coefs[j] > 0:
            lower.append(row)
        elif coefs[j] < 0:
            upper.append(row)
        else:
            rest.append(row)
    reduced = {}
    for coefs, const, strict in rest:
        key = (coefs[:j], const)
        reduced[key] = reduced.get(key, False) or strict
    for lc, lk, ls in lower:
        for uc, uk, us in upper:
            p, q = lc[j], -uc[j]
            coefs = tuple(q * lc[i] + p * uc[i] for i in range(j))
            key = _normalize_row(coefs, q * lk + p * uk)
            reduced[key] = reduced.get(key, False) or ls or us
    sub = _fm_solve([(c, k, s) for (c, k), s in reduced.items()], j)
    if sub is None:
        return None
    lo = hi = None
    lo_strict = hi_strict = False
    for coefs, const, strict in lower:
        # coefs[j] * v >= -(rest)
        bound = -(sum((coefs[i] * sub[i] for i in range(j)), Fraction(0)) + const) / coefs[j]
        if lo is None or bound > lo or (bound == lo and strict):
            lo, lo_strict = bound, strict
    for coefs, const, strict in upper:
        bound = -(sum((coefs[i] * sub[i] for i in range(j)), Fraction(0)) + const) / coefs[j]
        if hi is None or bound < hi or (bound == hi and strict):
            hi, hi_strict = bound, strict
    if lo is not None and hi is not None:
        if lo > hi or (lo == hi and (lo_strict or hi_strict)):
            return None  # unreachable when the elimination is exact
        value = lo if lo == hi else (lo + hi) / 2
    elif lo is not None:
        value = lo + 1
    elif hi is not None:
        value = hi - 1
    else:
        value = Fraction(0)
    return sub + (value,)


def _homog_point(rows: Sequence[tuple], nvars: int) -> Optional[tuple]:
    """Point of a homogeneous system ``coefs . v (> | >=) 0``.

    The solution set is a cone; it is sliced by ``sum(v) = 1``, then
    ``sum(v) = -1``, then recursively on ``sum(v) = 0``.  Only when every
    slice is empty (and no row is strict) is the origin returned.
    """
    if nvars == 0:
        return None if any(strict for _, strict in rows) else ()
    last = nvars - 1
    # substitute v_last = t - sum(v_0..v_{last-1})
    for t in (1, -1):
        aff = []
        for coefs, strict in rows:
            cl = coefs[last]
            aff.append((tuple(coefs[i] - cl for i in range(last)), cl * t, strict))
        pt = affine_feasible_point(aff, last)
        if pt is not None:
            return pt + (t - sum(pt, Fraction(0)),)
    sub_rows = [
        (tuple(coefs[i] - coefs[last] for i in range(last)), strict) for coefs, strict in rows
    ]
    pt = _homog_point(sub_rows, last)
    if pt is None:
        return None
    return pt + (-sum(pt, Fraction(0)),)


@lru_cache(maxsize=1 << 16)
def _cached_point(constraints: frozenset) -> Optional[Point]:
    rows = [(c.form.coeffs, c.strict) for c in sorted(constraints)]
    pt = _homog_point(rows, 3)
    if pt is None:
        return None
    p = Point(*pt)
    if p.as_tuple() == (0, 0, 0):
        return p
    return p.primitive()


def region_interior_point(r: Region, ambient: Optional[Region] = None) -> Optional[Point]:
    """A deterministic rational point of ``r`` (and ``ambient``), or ``None``.

    The point is scaled to coprime integer coordinates, which is harmless
    because every constraint is homogeneous.
    """
    cons = r.constraints if ambient is None else r.constraints | ambient.constraints
    return _cached_point(cons)


def region_feasible(r: Region, ambient: Optional[Region] = None) -> bool:
    return region_interior_point(r, ambient) is not None


def implies(region: Region, c: Ineq) -> bool:
    """True when every point of ``region`` satisfies ``c``."""
    return not region_feasible(region.add(c.negate()))
