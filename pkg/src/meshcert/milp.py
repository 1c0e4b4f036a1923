"""Exact mixed-integer formulation and branch-and-bound.

A :class:`MilpModel` has continuous ``x, y, z``, one binary per distinct
indicator literal and one binary per indicator region.  A literal binary
set to 1 activates its inequality; set to 0 it activates the complement.
Strict inequalities never appear: ``f > 0`` is stored as ``f >= eps`` and
the complement of ``f >= 0`` as ``f <= -eps``.

:func:`solve` branches on literal binaries.  Every node keeps the
continuous part of its constraint system as an exact cone (or, with
``lp="fm"``, as the eps-shifted affine system solved by Fourier-Motzkin),
fixes every literal whose value the node already determines, and bounds the
objective by the fixed part plus the negative coefficients of the regions
still undecided.
"""

from __future__ import annotations

import heapq
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .algebra import Ineq, LinForm, Point, Region, V, affine_feasible_point, eval_form
from .arrangement import collect_hyperplanes
from .cones import NEG, POS, ZERO, PolyCone
from .expansion import (
    IDENTITY,
    SWAP_XY,
    PiecewiseSum,
    Substitution,
    alpha,
    build_delta,
    build_level_diff,
)

log = logging.getLogger(__name__)

__all__ = [
    "LinearConstraint",
    "eps_reduce",
    "RegionVar",
    "MilpModel",
    "Status",
    "BnBResult",
    "model_from_sum",
    "build_milp_full",
    "build_milp_h_diff",
    "solve",
    "DecomposedBound",
    "certify_decomposed",
    "BigMForm",
    "to_big_m",
]

RELS = (">=", ">", "<=", "<")


@dataclass(frozen=True)
class LinearConstraint:
    """``form rel rhs`` with ``rel`` one of ``>=, >, <=, <``."""

    form: LinForm
    rel: str
    rhs: Fraction = Fraction(0)

    def __post_init__(self):
        if self.rel not in RELS:
            raise ValueError(f"unknown relation {self.rel!r}")
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    @classmethod
    def from_ineq(cls, c: Ineq) -> LinearConstraint:
        return cls(c.form, ">" if c.strict else ">=")

    @property
    def strict(self) -> bool:
        return self.rel in (">", "<")

    def holds(self, p: Point) -> bool:
        v = eval_form(self.form, p)
        return {
            ">=": v >= self.rhs,
            ">": v > self.rhs,
            "<=": v <= self.rhs,
            "<": v < self.rhs,
        }[self.rel]

    def as_row(self) -> tuple:
        """``(coefs, const)`` with the constraint reading ``coefs . p + const >= 0``."""
        a = self.form.coeffs
        if self.rel in (">=", ">"):
            return a, -self.rhs
        return tuple(-v for v in a), self.rhs

    def __str__(self) -> str:
        return f"{self.form} {self.rel} {self.rhs}"


def eps_reduce(constraints: Iterable, epsilon=1) -> list[LinearConstraint]:
    """Replace ``f > 0`` by ``f >= eps`` and ``f < 0`` by ``f <= -eps``.

    Weak constraints pass through.  Constraints with a nonzero right-hand
    side are rejected: the reduction relies on every constraint being
    invariant under positive scaling.
    """
    eps = Fraction(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    out = []
    for c in constraints:
        if isinstance(c, Ineq):
            c = LinearConstraint.from_ineq(c)
        if c.rhs != 0:
            raise ValueError(f"inhomogeneous constraint {c} cannot be eps-reduced")
        if c.rel == ">":
            out.append(LinearConstraint(c.form, ">=", eps))
        elif c.rel == "<":
            out.append(LinearConstraint(c.form, "<=", -eps))
        else:
            out.append(c)
    return out


def _literal_forms(lit: Ineq, eps: Fraction) -> tuple[LinearConstraint, LinearConstraint]:
    """eps-forms of a literal when its binary is 1 and when it is 0."""
    f = lit.form
    if lit.strict:
        return LinearConstraint(f, ">=", eps), LinearConstraint(f, "<=", Fraction(0))
    return LinearConstraint(f, ">=", Fraction(0)), LinearConstraint(f, "<=", -eps)


@dataclass(frozen=True)
class RegionVar:
    coef: Fraction
    literals: tuple[int, ...]
    level: int = 0


@dataclass
class MilpModel:
    hyperplanes: tuple[LinForm, ...]
    literals: tuple[Ineq, ...]
    literal_plane: tuple[int, ...]
    regions: tuple[RegionVar, ...]
    offset: Fraction
    ambient: Region
    ambient_eps: tuple[LinearConstraint, ...]
    include_cap: bool
    epsilon: Fraction = Fraction(1)
    name: str = ""
    source: Optional[PiecewiseSum] = field(default=None, repr=False)

    @property
    def literal_forms(self) -> list[tuple[LinearConstraint, LinearConstraint]]:
        return [_literal_forms(l, self.epsilon) for l in self.literals]

    def objective(self, region_values: Sequence[int]) -> Fraction:
        return self.offset + sum(
            (r.coef for r, b in zip(self.regions, region_values) if b), Fraction(0)
        )

    def check(self, p: Point, lit_values: Sequence[int], region_values: Sequence[int]) -> list[str]:
        """Violated constraints of the eps-reduced model at a full assignment."""
        bad = []
        for c in self.ambient_eps:
            if not c.holds(p):
                bad.append(f"ambient {c}")
        for l, (on, off) in enumerate(self.literal_forms):
            b = lit_values[l]
            if b not in (0, 1):
                bad.append(f"literal {l} not binary")
            elif not (on if b else off).holds(p):
                bad.append(f"literal {l}={b}: {on if b else off}")
        for k, r in enumerate(self.regions):
            b = region_values[k]
            if b not in (0, 1):
                bad.append(f"region {k} not binary")
                continue
            m = len(r.literals)
            if any(b > lit_values[l] for l in r.literals):
                bad.append(f"region {k} exceeds a literal")
            if b < sum(lit_values[l] for l in r.literals) - (m - 1):
                bad.append(f"region {k} below its conjunction")
        if self.include_cap and self.objective(region_values) > 0:
            bad.append("cap")
        return bad

    def assignment_at(self, p: Point) -> tuple[list[int], list[int]]:
        """Binary values induced by a point (literal truth, region conjunction)."""
        lits = [1 if l.sat(p) else 0 for l in self.literals]
        regs = [1 if all(lits[l] for l in r.literals) else 0 for r in self.regions]
        return lits, regs

    def eps_witness(self, p: Point) -> tuple[Point, list[int], list[int]]:
        """Scale a point so the eps-forms selected by its own signs all hold."""
        lits, regs = self.assignment_at(p)
        k = Fraction(1)
        active = list(self.ambient_eps)
        for l, (on, off) in enumerate(self.literal_forms):
            active.append(on if lits[l] else off)
        for c in active:
            if c.rhs == 0:
                continue
            v = eval_form(c.form, p)
            if v == 0 or (v > 0) != (c.rhs > 0):
                raise AssertionError(f"point {p} does not strictly satisfy {c}")
            k = max(k, c.rhs / v)
        return p.scale(k), lits, regs

    @property
    def size(self) -> dict:
        return {
            "hyperplanes": len(self.hyperplanes),
            "literal_binaries": len(self.literals),
            "region_binaries": len(self.regions),
        }


def model_from_sum(
    ps: PiecewiseSum, include_cap: bool = False, epsilon=1, name: str = ""
) -> MilpModel:
    eps = Fraction(epsilon)
    hyperplanes = tuple(collect_hyperplanes(ps))
    plane_index = {h: i for i, h in enumerate(hyperplanes)}
    lit_index: dict[Ineq, int] = {}
    regions = []
    for term in ps.terms:
        idx = tuple(lit_index.setdefault(c, len(lit_index)) for c in term.region)
        regions.append(RegionVar(term.coefficient, idx, term.level))
    literals = tuple(lit_index)
    return MilpModel(
        hyperplanes=hyperplanes,
        literals=literals,
        literal_plane=tuple(plane_index[l.hyperplane] for l in literals),
        regions=tuple(regions),
        offset=ps.constant,
        ambient=ps.ambient,
        ambient_eps=tuple(eps_reduce(sorted(ps.ambient.constraints), eps)),
        include_cap=include_cap,
        epsilon=eps,
        name=name,
        source=ps,
    )


def build_milp_full(
    n: int,
    s: Substitution = IDENTITY,
    t: Substitution = SWAP_XY,
    ambient: Region = V,
    include_cap: bool = True,
    offset=None,
    prune: bool = True,
    epsilon=1,
) -> MilpModel:
    """Minimise ``Delta_n + offset`` (default offset ``-alpha(n)``).

    With ``include_cap`` the objective is also constrained to be ``<= 0``.
    """
    ps = build_delta(n, s, t, ambient, prune=prune)
    off = -alpha(n) if offset is None else Fraction(offset)
    return model_from_sum(ps.shifted(off), include_cap, epsilon, name=f"full n={n} s={s} t={t}")


def build_milp_h_diff(
    n: int,
    s: Substitution = IDENTITY,
    t: Substitution = SWAP_XY,
    ambient: Region = V,
    epsilon=1,
) -> MilpModel:
    """Minimise ``h_n(s) - h_n(t)`` (level-``n`` terms only, no cap)."""
    ps = build_level_diff(n, s, t, ambient)
    return model_from_sum(ps, False, epsilon, name=f"h-diff n={n} s={s} t={t}")


# ---------------------------------------------------------------------------
# branch and bound


class Status(str, Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    BOUND_ONLY = "BoundOnly"


@dataclass(frozen=True)
class BnBResult:
    status: Status
    value: Optional[Fraction]
    witness: Optional[Point]
    node_count: int
    literal_values: Optional[tuple[int, ...]] = field(default=None, repr=False)
    region_values: Optional[tuple[int, ...]] = field(default=None, repr=False)


class _ConeGeom:
    """Node continuous set as an exact homogeneous cone."""

    __slots__ = ("cone",)

    def __init__(self, cone: PolyCone):
        self.cone = cone

    @classmethod
    def root(cls, model: MilpModel):
        return cls(PolyCone.from_region(model.ambient))

    def empty(self) -> bool:
        return self.cone.is_empty()

    def possible(self, model: MilpModel, l: int, cache: dict) -> tuple[bool, bool]:
        lit = model.literals[l]
        plane = model.literal_plane[l]
        mask = cache.get(plane)
        if mask is None:
            mask = cache[plane] = self.cone.sign_mask(model.hyperplanes[plane].coeffs)
        o = lit.orientation
        pos, neg = (POS, NEG) if o > 0 else (NEG, POS)
        zero = bool(mask & ZERO)
        if lit.strict:
            return bool(mask & pos), bool(mask & neg) or zero
        return bool(mask & pos) or zero, bool(mask & neg)

    def restrict(self, model: MilpModel, l: int, value: int):
        lit = model.literals[l]
        return _ConeGeom(self.cone.clip_ineq(lit if value else lit.negate()))

    def point(self) -> Point:
        return self.cone.point()


class _FMGeom:
    """Node continuous set as the eps-shifted affine system (Fourier-Motzkin)."""

    __slots__ = ("rows",)

    def __init__(self, rows: tuple):
        self.rows = rows

    @classmethod
    def root(cls, model: MilpModel):
        return cls(tuple(c.as_row() for c in model.ambient_eps))

    def _feasible(self, extra=()) -> Optional[tuple]:
        return affine_feasible_point([(c, k, False) for c, k in self.rows + tuple(extra)], 3)

    def empty(self) -> bool:
        return self._feasible() is None

    def possible(self, model: MilpModel, l: int, cache: dict) -> tuple[bool, bool]:
        on, off = _literal_forms(model.literals[l], model.epsilon)
        return (
            self._feasible((on.as_row(),)) is not None,
            self._feasible((off.as_row(),)) is not None,
        )

    def restrict(self, model: MilpModel, l: int, value: int):
        on, off = _literal_forms(model.literals[l], model.epsilon)
        return _FMGeom(self.rows + ((on if value else off).as_row(),))

    def point(self) -> Point:
        return Point(*self._feasible())


@dataclass
class _Node:
    geom: object
    fixed: dict
    unresolved: tuple
    value: Fraction  # offset plus regions decided to 1
    lb: Fraction
    seq: int = 0

    def __lt__(self, other: _Node) -> bool:
        return (self.lb, self.seq) < (other.lb, other.seq)


class _Search:
    def __init__(self, model: MilpModel, lp: str = "cone"):
        self.model = model
        self.geom_cls = {"cone": _ConeGeom, "fm": _FMGeom}[lp]
        self.regions_of: dict[int, list[int]] = {}
        for k, r in enumerate(model.regions):
            for l in r.literals:
                self.regions_of.setdefault(l, []).append(k)
        self.evaluated = 0
        self.seq = 0

    def root(self) -> Optional[_Node]:
        geom = self.geom_cls.root(self.model)
        if geom.empty():
            self.evaluated += 1
            return None
        return self.evaluate(geom, {}, tuple(range(len(self.model.regions))), self.model.offset)

    def evaluate(self, geom, fixed: dict, unresolved: tuple, value: Fraction) -> Optional[_Node]:
        """Propagate literal values, decide regions and bound the node."""
        self.evaluated += 1
        model = self.model
        regions = model.regions
        cache: dict = {}
        fixed = dict(fixed)
        pending = sorted({l for k in unresolved for l in regions[k].literals if l not in fixed})
        for l in pending:
            can1, can0 = geom.possible(model, l, cache)
            if not (can1 or can0):
                return None
            if not can1:
                fixed[l] = 0
            elif not can0:
                fixed[l] = 1
        still = []
        lb = value
        for k in unresolved:
            lits = regions[k].literals
            if any(fixed.get(l) == 0 for l in lits):
                continue
            if all(fixed.get(l) == 1 for l in lits):
                value += regions[k].coef
                lb += regions[k].coef
                continue
            still.append(k)
            if regions[k].coef < 0:
                lb += regions[k].coef
        self.seq += 1
        return _Node(geom, fixed, tuple(still), value, lb, self.seq)

    def branch_literal(self, node: _Node) -> int:
        regions = self.model.regions
        counts: dict[int, list[int]] = {}
        for k in node.unresolved:
            neg = regions[k].coef < 0
            for l in regions[k].literals:
                if l in node.fixed:
                    continue
                c = counts.setdefault(l, [0, 0])
                c[0] += neg
                c[1] += 1
        planes = self.model.literal_plane
        return min(counts, key=lambda l: (-counts[l][0], -counts[l][1], planes[l], l))

    def children(self, node: _Node) -> list[_Node]:
        l = self.branch_literal(node)
        out = []
        for value in (1, 0):
            geom = node.geom.restrict(self.model, l, value)
            child = self.evaluate(geom, {**node.fixed, l: value}, node.unresolved, node.value)
            if child is not None:
                out.append(child)
        return out


def _finish_witness(model: MilpModel, node: _Node) -> tuple[Point, tuple, tuple]:
    p = node.geom.point()
    p, lits, regs = model.eps_witness(p)
    bad = model.check(p, lits, regs)
    if bad:
        raise AssertionError(f"witness violates the model: {bad[:3]}")
    if model.objective(regs) != node.value:
        raise AssertionError("witness objective disagrees with the node value")
    return p, tuple(lits), tuple(regs)


def _run(
    search: _Search,
    start: list[_Node],
    node_budget: Optional[int],
    cutoff: Optional[Fraction] = None,
):
    """Best-bound search from ``start``; returns (incumbent node, open lbs)."""
    model = search.model
    heap = list(start)
    heapq.heapify(heap)
    incumbent: Optional[_Node] = None
    best = cutoff

    def keep(node: _Node) -> bool:
        if model.include_cap and node.lb > 0:
            return False
        return best is None or node.lb < best

    while heap:
        node = heapq.heappop(heap)
        if not keep(node):
            continue
        if not node.unresolved:
            if incumbent is None or node.value < incumbent.value:
                incumbent = node
                best = node.value if best is None else min(best, node.value)
            continue
        # branching evaluates both children; never exceed the budget
        if node_budget is not None and search.evaluated + 2 > node_budget:
            heapq.heappush(heap, node)
            break
        for child in search.children(node):
            if keep(child):
                heapq.heappush(heap, child)
    open_lbs = [n.lb for n in heap if keep(n)]
    return incumbent, open_lbs


def _subtree_job(args):
    model, lp, node, cutoff = args
    search = _Search(model, lp)
    inc, _ = _run(search, [node], None, cutoff)
    if inc is None:
        return None, search.evaluated
    return (inc.value, _finish_witness(model, inc)), search.evaluated


SPLIT_WIDTH = 32


def solve(
    model: MilpModel,
    node_budget: Optional[int] = None,
    threads: int = 1,
    lp: str = "cone",
) -> BnBResult:
    """Exact branch-and-bound.

    The tree is first grown best-bound to a frontier of :data:`SPLIT_WIDTH`
    open nodes; the subtrees below the frontier are then solved
    independently, in a process pool when ``threads > 1``.  The frontier
    does not depend on ``threads``, so neither does any part of the result.

    With a ``node_budget`` the same computation runs serially (subtrees in
    frontier order) and never evaluates more than that many nodes; when it
    has to stop early it reports ``BoundOnly`` with the least bound over
    everything still open.  A budget at least the natural node count
    reproduces the unbudgeted result.
    """
    if node_budget is not None and node_budget <= 0:
        trivial = model.offset + sum((r.coef for r in model.regions if r.coef < 0), Fraction(0))
        return BnBResult(Status.BOUND_ONLY, trivial, None, 0)
    search = _Search(model, lp)
    root = search.root()
    if root is None:
        return BnBResult(Status.INFEASIBLE, None, None, search.evaluated)

    def over_budget(count: int) -> bool:
        return node_budget is not None and count + 2 > node_budget

    heap = [root]
    incumbent = None
    while heap and len(heap) < SPLIT_WIDTH:
        if model.include_cap:
            heap = [n for n in heap if n.lb <= 0]
        if incumbent is not None:
            heap = [n for n in heap if n.lb < incumbent.value]
        heapq.heapify(heap)
        if not heap:
            break
        node = heapq.heappop(heap)
        if not node.unresolved:
            if incumbent is None or node.value < incumbent.value:
                incumbent = node
            continue
        if over_budget(search.evaluated):
            heap.append(node)
            return _bound_only(heap, incumbent, search.evaluated)
        heap.extend(search.children(node))
    frontier = sorted(heap)
    cutoff = incumbent.value if incumbent is not None else None
    evaluated = search.evaluated
    best = None
    if incumbent is not None:
        best = (incumbent.value, _finish_witness(model, incumbent))

    if node_budget is not None:
        for k, node in enumerate(frontier):
            sub = _Search(model, lp)
            inc, open_lbs = _run(sub, [node], max(node_budget - evaluated, 0), cutoff)
            evaluated += sub.evaluated
            if inc is not None and (best is None or inc.value < best[0]):
                best = (inc.value, _finish_witness(model, inc))
            if open_lbs:
                rest = [n.lb for n in frontier[k + 1 :]]
                if model.include_cap:
                    rest = [v for v in rest if v <= 0]
                bound = min(open_lbs + rest + ([best[0]] if best else []))
                return BnBResult(Status.BOUND_ONLY, bound, None, evaluated)
        outcomes = []
    else:
        jobs = [(model, lp, node, cutoff) for node in frontier]
        if threads > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=threads) as pool:
                outcomes = list(pool.map(_subtree_job, jobs, chunksize=1))
        else:
            outcomes = [_subtree_job(j) for j in jobs]
    for found, count in outcomes:
        evaluated += count
        if found is not None and (best is None or found[0] < best[0]):
            best = found
    if best is None:
        return BnBResult(Status.INFEASIBLE, None, None, evaluated)
    value, (p, lits, regs) = best
    return BnBResult(Status.OPTIMAL, value, p, evaluated, lits, regs)


def _bound_only(open_nodes: list, incumbent: Optional[_Node], evaluated: int) -> BnBResult:
    lbs = [n.lb for n in open_nodes]
    if incumbent is not None:
        lbs.append(incumbent.value)
    return BnBResult(Status.BOUND_ONLY, min(lbs), None, evaluated)


# ---------------------------------------------------------------------------
# decomposition


@dataclass(frozen=True)
class DecomposedBound:
    n: int
    bound: Fraction  # lower bound on Delta_n - alpha_n
    previous: BnBResult  # min Delta_{n-1} - alpha_{n-1}
    level_diff: BnBResult  # min h_n(s) - h_n(t)
    alpha_n: Fraction

    @property
    def delta_bound(self) -> Fraction:
        """The implied lower bound on ``Delta_n`` itself."""
        return self.bound + self.alpha_n


def certify_decomposed(
    n: int,
    s: Substitution = IDENTITY,
    t: Substitution = SWAP_XY,
    ambient: Region = V,
    threads: int = 1,
) -> DecomposedBound:
    """Lower-bound ``Delta_n - alpha_n`` by two smaller exact MILPs.

    ``Delta_n - alpha_n = (Delta_{n-1} - alpha_{n-1}) + (h_n(s) - h_n(t)) +
    alpha_n``, and the sum of the two separate minima bounds the left side
    from below even when the minimisers differ.
    """
    if n < 2:
        raise ValueError("the decomposition needs n >= 2")
    prev = solve(build_milp_full(n - 1, s, t, ambient, include_cap=False), threads=threads)
    diff = solve(build_milp_h_diff(n, s, t, ambient), threads=threads)
    for part in (prev, diff):
        if part.status is not Status.OPTIMAL:
            raise RuntimeError(f"decomposition part did not solve: {part.status}")
    a = alpha(n)
    return DecomposedBound(n, prev.value + diff.value + a, prev, diff, a)


# ---------------------------------------------------------------------------
# big-M comparison form


@dataclass(frozen=True)
class BigMForm:
    """Dense big-M model: minimise ``c @ v + offset`` s.t. ``A @ v <= b``.

    Variables are ``x, y, z``, then literal binaries, then region binaries.
    """

    c: list
    A: list
    b: list
    integrality: list
    lower: list
    upper: list
    offset: Fraction


def to_big_m(model: MilpModel, box: tuple) -> BigMForm:
    """Rewrite the indicator constraints with big-M over ``lo <= x, y, z <= hi``.

    ``M`` is the exact range of each form over the box.  Only for comparison
    with external solvers; the exact search never uses it.
    """
    lo, hi = Fraction(box[0]), Fraction(box[1])
    nl, nr = len(model.literals), len(model.regions)
    nv = 3 + nl + nr
    A, b = [], []

    def form_range(f: LinForm):
        mn = sum(min(a * lo, a * hi) for a in f.coeffs)
        mx = sum(max(a * lo, a * hi) for a in f.coeffs)
        return mn, mx

    def row(f: LinForm):
        r = [Fraction(0)] * nv
        r[0], r[1], r[2] = (Fraction(v) for v in f.coeffs)
        return r

    for c in model.ambient_eps:
        coefs, const = c.as_row()  # coefs.p + const >= 0
        A.append([-Fraction(v) for v in coefs] + [Fraction(0)] * (nv - 3))
        b.append(Fraction(const))
    for l, (on, off) in enumerate(model.literal_forms):
        # b=1: f >= on.rhs  ->  -f + (on.rhs - mn) * b <= -mn
        mn, mx = form_range(on.form)
        r = [-v for v in row(on.form)]
        r[3 + l] = on.rhs - mn
        A.append(r)
        b.append(-mn)
        # b=0: f <= off.rhs ->  f + (mx - off.rhs) * (1 - b) ... f - (mx - off.rhs) * b <= off.rhs
        r = row(off.form)
        r[3 + l] = -(mx - off.rhs)
        A.append(r)
        b.append(off.rhs)
    for k, reg in enumerate(model.regions):
        col = 3 + nl + k
        for l in reg.literals:
            r = [Fraction(0)] * nv
            r[col] = Fraction(1)
            r[3 + l] = Fraction(-1)
            A.append(r)
            b.append(Fraction(0))
        r = [Fraction(0)] * nv
        r[col] = Fraction(-1)
        for l in reg.literals:
            r[3 + l] = Fraction(1)
        A.append(r)
        b.append(Fraction(len(reg.literals) - 1))
    c = [Fraction(0)] * 3 + [Fraction(0)] * nl + [r.coef for r in model.regions]
    if model.include_cap:
        A.append(list(c))
        b.append(-model.offset)
    integrality = [0] * 3 + [1] * (nl + nr)
    lower = [lo] * 3 + [Fraction(0)] * (nl + nr)
    upper = [hi] * 3 + [Fraction(1)] * (nl + nr)
    return BigMForm(c, A, b, integrality, lower, upper, model.offset)
