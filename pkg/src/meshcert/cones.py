"""Pointed polyhedral cones in R^3 stored by their extreme rays.

A :class:`PolyCone` is the set ``{p : f(p) > 0 for strict f, g(p) >= 0
for weak g}`` whose closure is a pointed cone lying in ``x + y + z > 0``.
Seen on the plane ``x + y + z = 1`` it is a convex polygon with some
boundary pieces removed.  The closure is kept as a cyclic list of primitive
integer rays, so clipping, sign classification and point selection all run
in integer arithmetic.

The set itself is the union of the relative interiors of those faces of the
closure on which no strict constraint vanishes identically.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from .algebra import Ineq, LinForm, Point, Region

Vec = tuple[int, int, int]

__all__ = ["PolyCone", "UnboundedAmbient", "cross", "dot"]


class UnboundedAmbient(ValueError):
    """The ambient region's closure is not a pointed cone inside x+y+z > 0."""


def dot(h: Sequence[int], r: Sequence[int]) -> int:
    return h[0] * r[0] + h[1] * r[1] + h[2] * r[2]


def cross(u: Sequence[int], v: Sequence[int]) -> Vec:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _prim(r: Sequence[int]) -> Vec:
    g = gcd(gcd(abs(r[0]), abs(r[1])), abs(r[2]))
    if g > 1:
        return (r[0] // g, r[1] // g, r[2] // g)
    return (r[0], r[1], r[2])


def _neg(h: Sequence[int]) -> Vec:
    return (-h[0], -h[1], -h[2])


def _clip_rays(rays: Sequence[Vec], h: Sequence[int]) -> list[Vec]:
    """Sutherland-Hodgman clip of a cyclic ray polygon by ``h >= 0``."""
    m = len(rays)
    if m == 0:
        return []
    vals = [dot(h, r) for r in rays]
    if min(vals) >= 0:
        return list(rays)
    if max(vals) < 0:
        return []
    out: list[Vec] = []
    for k in range(m):
        r, v = rays[k], vals[k]
        if v >= 0:
            out.append(r)
        if m > 1:
            k2 = k + 1 if k + 1 < m else 0
            w = vals[k2]
            if (v > 0 > w) or (v < 0 < w):
                r2 = rays[k2]
                av, aw = abs(v), abs(w)
                out.append(_prim((av * r2[0] + aw * r[0], av * r2[1] + aw * r[1], av * r2[2] + aw * r[2])))
    ded: list[Vec] = []
    for r in out:
        if not ded or ded[-1] != r:
            ded.append(r)
    while len(ded) > 1 and ded[0] == ded[-1]:
        ded.pop()
    return ded


def _sign_set(vals: Sequence[int]) -> int:
    """Bitmask of signs taken by a linear function on the open hull of rays.

    bit 0: negative, bit 1: zero, bit 2: positive.
    """
    lo, hi = min(vals), max(vals)
    mask = 0
    if hi > 0:
        mask |= 4
    if lo < 0:
        mask |= 1
    if (lo < 0 < hi) or (lo == 0 == hi):
        mask |= 2
    return mask


NEG, ZERO, POS = 1, 2, 4


def _mask_signs(mask: int) -> set[int]:
    return {s for bit, s in ((NEG, -1), (ZERO, 0), (POS, 1)) if mask & bit}


class PolyCone:
    """Exact convex cone with mixed strict/weak boundary."""

    __slots__ = ("rays", "strict", "_faces")

    def __init__(self, rays: Sequence[Vec], strict: Iterable[Vec] = ()):
        self.rays: tuple[Vec, ...] = tuple(rays)
        # only strict constraints vanishing on some ray can exclude anything
        self.strict: tuple[Vec, ...] = tuple(
            s for s in dict.fromkeys(strict) if any(dot(s, r) == 0 for r in self.rays)
        )
        self._faces: Optional[list[tuple[Vec, ...]]] = None

    # ------------------------------------------------------------------
    @classmethod
    def from_region(cls, region: Region) -> PolyCone:
        """Build the cone of a region whose closure is pointed in x+y+z > 0.

        Raises :class:`UnboundedAmbient` otherwise, and returns an empty cone
        for an infeasible region.
        """
        forms = [c.form.coeffs for c in region.constraints]
        ones = (1, 1, 1)
        # recession directions of the slice x+y+z = 1
        dirs = [d for d in (cross(f, ones) for f in forms) if any(d)]
        if not dirs:
            raise UnboundedAmbient(f"ambient {region!r} is unbounded on x+y+z=1")
        for d in dirs:
            for dd in (d, _neg(d)):
                if all(dot(f, dd) >= 0 for f in forms):
                    raise UnboundedAmbient(f"ambient {region!r} is unbounded on x+y+z=1")
        cand = set()
        for i in range(len(forms)):
            for j in range(i + 1, len(forms)):
                r = cross(forms[i], forms[j])
                s = sum(r)
                if s == 0:
                    continue
                if s < 0:
                    r = _neg(r)
                r = _prim(r)
                if all(dot(f, r) >= 0 for f in forms):
                    cand.add(r)
        rays = _convex_hull(sorted(cand))
        strict = [c.form.coeffs for c in region.constraints if c.strict]
        cone = cls(rays, strict)
        return cone

    # ------------------------------------------------------------------
    def is_empty(self) -> bool:
        return not self.faces()

    def dim(self) -> int:
        """Dimension of the closure, seen on the plane x+y+z=1."""
        return min(len(self.rays), 3) - 1

    def faces(self) -> list[tuple[Vec, ...]]:
        """Faces of the closure whose relative interiors belong to the set.

        Ordered by decreasing dimension, then by position on the ray cycle.
        """
        if self._faces is not None:
            return self._faces
        rays, strict = self.rays, self.strict
        m = len(rays)
        faces: list[tuple[Vec, ...]] = []
        if m == 0:
            self._faces = faces
            return faces
        zero = [frozenset(i for i, s in enumerate(strict) if dot(s, r) == 0) for r in rays]
        if m >= 3:
            faces.append(tuple(rays))
            for k in range(m):
                k2 = (k + 1) % m
                if not (zero[k] & zero[k2]):
                    faces.append((rays[k], rays[k2]))
        elif m == 2:
            if not (zero[0] & zero[1]):
                faces.append(tuple(rays))
        for k in range(m):
            if not zero[k]:
                faces.append((rays[k],))
        self._faces = faces
        return faces

    def sign_mask(self, h: Sequence[int]) -> int:
        """Bitmask of the signs ``h`` takes on the set (see ``NEG/ZERO/POS``)."""
        faces = self.faces()
        if not faces:
            return 0
        if len(faces[0]) != len(self.rays):
            mask = 0
            for f in faces:
                mask |= _sign_set([dot(h, r) for r in f])
            return mask
        top = [dot(h, r) for r in faces[0]]
        mask = _sign_set(top)
        if mask & ZERO or (min(top) != 0 and max(top) != 0):
            return mask
        # h vanishes somewhere on the boundary: look at the included lower faces
        for f in faces[1:]:
            if all(dot(h, r) == 0 for r in f):
                return mask | ZERO
        return mask

    def signs(self, h: Sequence[int]) -> set[int]:
        return _mask_signs(self.sign_mask(h))

    def admits(self, ineq: Ineq) -> bool:
        """Whether some point of the set satisfies ``ineq``."""
        mask = self.sign_mask(ineq.form.coeffs)
        return bool(mask & POS) or (not ineq.strict and bool(mask & ZERO))

    def clip(self, h: Sequence[int], strict: bool) -> PolyCone:
        rays = _clip_rays(self.rays, h)
        st = list(self.strict)
        if strict:
            st.append(tuple(h))
        return PolyCone(rays, st)

    def clip_ineq(self, ineq: Ineq) -> PolyCone:
        return self.clip(ineq.form.coeffs, ineq.strict)

    def clip_zero(self, h: Sequence[int]) -> PolyCone:
        """Restrict to the hyperplane ``h = 0``."""
        rays = _clip_rays(_clip_rays(self.rays, h), _neg(h))
        return PolyCone(rays, self.strict)

    def witness(self) -> Optional[Vec]:
        """A primitive integer point in the relative interior of the top face."""
        faces = self.faces()
        if not faces:
            return None
        f = faces[0]
        return _prim(tuple(sum(r[i] for r in f) for i in range(3)))

    def point(self) -> Optional[Point]:
        w = self.witness()
        return None if w is None else Point.of(*w)

    def __repr__(self) -> str:
        return f"PolyCone(rays={list(self.rays)}, strict={list(self.strict)})"


def _convex_hull(points: list[Vec]) -> list[Vec]:
    """Strictly convex hull, in cyclic order, of rays with x+y+z > 0."""
    pts = sorted({(Fraction(r[0], sum(r)), Fraction(r[1], sum(r))): r for r in points}.items())
    if len(pts) <= 2:
        return [r for _, r in pts]

    def orient(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list = []
    for p in pts:
        while len(lower) >= 2 and orient(lower[-2][0], lower[-1][0], p[0]) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and orient(upper[-2][0], upper[-1][0], p[0]) <= 0:
            upper.pop()
        upper.append(p)
    return [r for _, r in lower[:-1] + upper[:-1]]
