"""Face enumeration of the hyperplane arrangement behind a piecewise sum.

Every indicator region is cut out by planes through the origin, so on the
slice ``x + y + z = 1`` the regions become a line arrangement inside a
polygon.  The value of the sum is constant on each face (cell, edge or
vertex) of that arrangement, and enumerating all faces gives the exact
minimum.

Faces are found by recursive splitting: a relatively open piece of the
ambient domain is cut by the first hyperplane that crosses it into its
``+``, ``0`` and ``-`` parts, until no hyperplane crosses any piece.  Each
leaf then has one sign per hyperplane and is exactly one face.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from .algebra import Ineq, LinForm, Point, Region, region_feasible
from .cones import NEG, POS, ZERO, PolyCone, dot
from .expansion import (
    IDENTITY,
    SWAP_XY,
    PiecewiseSum,
    Substitution,
    alpha,
    build_delta,
    evaluate_many,
)

log = logging.getLogger(__name__)

Hyperplane = LinForm

__all__ = [
    "Hyperplane",
    "Cell",
    "MinReport",
    "MeshStep",
    "MeshResult",
    "collect_hyperplanes",
    "enumerate_cells",
    "enumerate_cells_brute",
    "global_min",
    "meshitup",
]


@dataclass(frozen=True)
class Cell:
    """One face of the arrangement: a sign per hyperplane and a point realising it."""

    signs: tuple[int, ...]
    rep: Point
    dim: int

    def sign_map(self, hyperplanes: Sequence[Hyperplane]) -> dict[Hyperplane, int]:
        return dict(zip(hyperplanes, self.signs))


@dataclass(frozen=True)
class MinReport:
    min_value: Fraction
    witness: Point
    witness_signs: tuple[int, ...]
    witness_dim: int
    cell_count: int
    hyperplane_count: int
    hyperplanes: tuple[Hyperplane, ...] = field(repr=False, default=())


def collect_hyperplanes(ps: PiecewiseSum) -> list[Hyperplane]:
    seen = set()
    for c in ps.ambient.constraints:
        seen.add(c.hyperplane)
    for term in ps.terms:
        for c in term.region.constraints:
            seen.add(c.hyperplane)
    return sorted(seen, reverse=True)


def _split(cone: PolyCone, cand: list[int], signs: dict, hs: list, out: list) -> None:
    stack = [(cone, cand, signs)]
    while stack:
        cone, cand, signs = stack.pop()
        cutting = []
        for i in cand:
            mask = cone.sign_mask(hs[i])
            if mask == POS:
                signs[i] = 1
            elif mask == NEG:
                signs[i] = -1
            elif mask == ZERO:
                signs[i] = 0
            else:
                cutting.append(i)
        if not cutting:
            out.append((cone, signs))
            continue
        i, rest = cutting[0], cutting[1:]
        h = hs[i]
        neg = (-h[0], -h[1], -h[2])
        mask = cone.sign_mask(h)
        # pushed in reverse so the '+' branch is explored first
        if mask & NEG:
            stack.append((cone.clip(neg, True), rest, {**signs, i: -1}))
        if mask & ZERO:
            stack.append((cone.clip_zero(h), rest, {**signs, i: 0}))
        if mask & POS:
            stack.append((cone.clip(h, True), rest, {**signs, i: 1}))


def _split_job(args):
    cone, cand, signs, hs = args
    out: list = []
    _split(cone, cand, signs, hs, out)
    return out


def _frontier(root: PolyCone, hs: list, width: int) -> list:
    """Split breadth-first until at least ``width`` pieces (or no more cuts)."""
    pieces = [(root, list(range(len(hs))), {})]
    while len(pieces) < width:
        nxt = []
        progressed = False
        for cone, cand, signs in pieces:
            cutting = []
            for i in cand:
                mask = cone.sign_mask(hs[i])
                if mask in (POS, NEG, ZERO):
                    signs[i] = {POS: 1, NEG: -1, ZERO: 0}[mask]
                else:
                    cutting.append(i)
            if not cutting:
                nxt.append((cone, [], signs))
                continue
            progressed = True
            i, rest = cutting[0], cutting[1:]
            h = hs[i]
            mask = cone.sign_mask(h)
            if mask & POS:
                nxt.append((cone.clip(h, True), list(rest), {**signs, i: 1}))
            if mask & ZERO:
                nxt.append((cone.clip_zero(h), list(rest), {**signs, i: 0}))
            if mask & NEG:
                nxt.append((cone.clip((-h[0], -h[1], -h[2]), True), list(rest), {**signs, i: -1}))
        pieces = nxt
        if not progressed:
            break
    return pieces


def enumerate_cells(
    hs: Sequence[Hyperplane], ambient: Region, threads: int = 1
) -> list[Cell]:
    """Every realisable sign vector of ``hs`` inside ``ambient``, with a witness.

    Lower-dimensional faces (zero signs) are included.  The result is sorted
    by sign vector, so it does not depend on ``threads``.
    """
    hs = list(hs)
    ambient_planes = [c.hyperplane for c in ambient.constraints if c.hyperplane not in hs]
    split_forms = [h.coeffs for h in hs] + [h.coeffs for h in ambient_planes]
    root = PolyCone.from_region(ambient)
    if root.is_empty():
        return []
    raw: list = []
    if threads > 1 and len(split_forms) > 40:
        pieces = _frontier(root, split_forms, 8 * threads)
        jobs = [(c, cand, s, split_forms) for c, cand, s in pieces]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(_split_job, jobs, chunksize=1):
                raw.extend(part)
    else:
        _split(root, list(range(len(split_forms))), {}, split_forms, raw)
    cells = []
    k = len(hs)
    for cone, signs in raw:
        rep = cone.point()
        cells.append(Cell(tuple(signs[i] for i in range(k)), rep, cone.dim()))
    cells.sort(key=lambda c: (c.signs, c.rep))
    # leaves that differ only on ambient-only planes share a sign vector here
    merged: list[Cell] = []
    for c in cells:
        if merged and merged[-1].signs == c.signs:
            continue
        merged.append(c)
    return merged


def _sign_region(hs: Sequence[Hyperplane], signs: Sequence[int]) -> Region:
    cons = []
    for h, s in zip(hs, signs):
        if s > 0:
            cons.append(Ineq.gt(h))
        elif s < 0:
            cons.append(Ineq.lt(h))
        else:
            cons.extend((Ineq.ge(h), Ineq.le(h)))
    return Region(cons)


def enumerate_cells_brute(hs: Sequence[Hyperplane], ambient: Region) -> list[Cell]:
    """All ``3^k`` sign vectors tested by Fourier-Motzkin; for small ``k`` only."""
    from .algebra import region_interior_point

    cells = []
    for signs in product((-1, 0, 1), repeat=len(hs)):
        region = _sign_region(hs, signs)
        p = region_interior_point(region, ambient)
        if p is None:
            continue
        rank_dim = 2 - sum(1 for s in signs if s == 0)  # informational only
        cells.append(Cell(tuple(signs), p, max(rank_dim, 0)))
    cells.sort(key=lambda c: c.signs)
    return cells


def global_min(ps: PiecewiseSum, threads: int = 1) -> MinReport:
    """Exact minimum of ``ps`` over its ambient region, by full face enumeration."""
    hs = collect_hyperplanes(ps)
    cells = enumerate_cells(hs, ps.ambient, threads=threads)
    if not cells:
        raise ValueError("ambient region is empty")
    reps = [tuple(int(v) for v in c.rep.as_tuple()) for c in cells]
    values = evaluate_many(ps, reps)
    best = None
    for cell, val in zip(cells, values):
        key = (val, cell.rep)
        if best is None or key < best[0]:
            best = (key, cell)
    (val, _), cell = best
    return MinReport(
        min_value=val,
        witness=cell.rep,
        witness_signs=cell.signs,
        witness_dim=cell.dim,
        cell_count=len(cells),
        hyperplane_count=len(hs),
        hyperplanes=tuple(hs),
    )


@dataclass(frozen=True)
class MeshStep:
    n: int
    min_value: Fraction
    alpha: Fraction
    witness: Point
    cell_count: int
    hyperplane_count: int

    @property
    def passed(self) -> bool:
        return self.min_value > self.alpha


@dataclass(frozen=True)
class MeshResult:
    n: Optional[int]
    bound: Optional[Fraction]
    steps: tuple[MeshStep, ...]
    max_n: int

    @property
    def found(self) -> bool:
        return self.n is not None


def meshitup(
    s: Substitution = IDENTITY,
    t: Substitution = SWAP_XY,
    ambient: Optional[Region] = None,
    max_n: int = 6,
    weak: bool = False,
    threads: int = 1,
    min_n: int = 2,
) -> MeshResult:
    """Smallest ``n`` in ``[min_n, max_n]`` with ``min Delta_n > alpha(n)``.

    ``weak`` relaxes the test to ``>=``.  ``MeshResult.n`` is ``None`` when no
    such ``n`` exists within ``max_n``.
    """
    from .algebra import V

    if ambient is None:
        ambient = V
    if max_n < min_n:
        raise ValueError("max_n must be at least min_n")
    steps = []
    for n in range(min_n, max_n + 1):
        ps = build_delta(n, s, t, ambient)
        rep = global_min(ps, threads=threads)
        a = alpha(n)
        steps.append(MeshStep(n, rep.min_value, a, rep.witness, rep.cell_count, rep.hyperplane_count))
        log.info("n=%d min=%s alpha=%s cells=%d", n, rep.min_value, a, rep.cell_count)
        ok = rep.min_value >= a if weak else rep.min_value > a
        if ok:
            return MeshResult(n, rep.min_value, tuple(steps), max_n)
    return MeshResult(None, None, tuple(steps), max_n)
