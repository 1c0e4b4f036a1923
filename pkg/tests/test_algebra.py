from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from meshcert.algebra import (
    Ineq,
    LinForm,
    Point,
    Region,
    V,
    X,
    Y,
    Z,
    affine_feasible_point,
    eval_form,
    implies,
    region_feasible,
    region_interior_point,
    region_intersect,
)

rats = st.fractions(min_value=-50, max_value=50, max_denominator=40)
small = st.integers(-3, 3)
forms = st.tuples(small, small, small).filter(any).map(lambda t: LinForm(*t))


def test_eval_form_examples():
    assert eval_form(LinForm(1, -1, 0), Point.of(4, 5, 6)) == -1
    assert eval_form(LinForm(0, 0, 0), Point.of(1, 2, 3)) == 0
    assert eval_form(2 * X + Y - Z, Point.of(4, 5, 6)) == 7


def test_canonical_hyperplane():
    h, sign = LinForm(-2, 4, 0).canonical()
    assert (h, sign) == (LinForm(1, -2, 0), -1)
    assert LinForm(0, 3, -6).canonical() == (LinForm(0, 1, -2), 1)


def test_ineq_normalization():
    c = Ineq.le(LinForm(2, -4, 0))
    assert c.form == LinForm(-1, 2, 0) and not c.strict
    assert Ineq(c.form, c.strict) == c
    assert c.negate().negate() == c
    assert Ineq.lt(X - Y) == Ineq.gt(Y - X)
    with pytest.raises(ValueError):
        Ineq.ge(LinForm(0, 0, 0))


def test_region_feasible_examples():
    assert not region_feasible(Region([Ineq.gt(X - Y)]), V)
    r = Region([Ineq.le(X - Z + Y)])
    assert region_feasible(r, V)
    assert r.sat(Point.of(1, 2, 4)) and V.sat(Point.of(1, 2, 4))
    assert not region_feasible(Region([Ineq.ge(X - Y), Ineq.gt(Y - X)]))


def test_region_interior_point_examples():
    p = region_interior_point(Region(), V)
    assert p is not None and V.sat(p)
    assert p == region_interior_point(Region(), V)
    assert region_interior_point(Region([Ineq.gt(X - Y)]), V) is None
    r = Region([Ineq.le(3 * X - Y)])
    q = region_interior_point(r, V)
    assert r.sat(q) and V.sat(q)


def test_region_intersect_examples():
    a = Region([Ineq.gt(X - Y)])
    assert len(region_intersect(a, a)) == 1
    assert region_intersect(Region(), V) == V
    both = region_intersect(Region([Ineq.le(X - Y)]), Region([Ineq.le(Y - X)]))
    assert len(both) == 2
    p = region_interior_point(both)
    assert p is not None and p.x == p.y


def test_homogeneous_boundary_only():
    # only the origin satisfies x >= 0, y >= 0, z >= 0, x + y + z <= 0
    r = Region([Ineq.ge(X), Ineq.ge(Y), Ineq.ge(Z), Ineq.le(X + Y + Z)])
    assert region_interior_point(r) == Point.of(0, 0, 0)
    assert not region_feasible(r.add(Ineq.gt(X)))


def test_implies():
    assert implies(V, Ineq.gt(Z))
    assert not implies(V, Ineq.ge(2 * X - Y))


def test_affine_feasible_point():
    # x >= 1, y - x >= 1, 3 - y >= 0
    rows = [((1, 0), -1, False), ((-1, 1), -1, False), ((0, -1), 3, False)]
    p = affine_feasible_point(rows, 2)
    assert p[0] >= 1 and p[1] - p[0] >= 1 and p[1] <= 3
    assert affine_feasible_point(rows + [((1, 0), -3, True)], 2) is None


@given(rats, rats.filter(lambda q: q != 0))
def test_rational_exactness(p, q):
    assert (p + q) - q == p
    assert (p * q) / q == p


@given(st.lists(st.tuples(forms, st.booleans()), min_size=1, max_size=5))
def test_feasibility_soundness(cons):
    r = Region([Ineq(f, s) for f, s in cons])
    p = region_interior_point(r)
    assert (p is not None) == region_feasible(r)
    if p is not None:
        assert r.sat(p)
        for k in (Fraction(1, 3), Fraction(7, 5), 2):
            assert r.sat(p.scale(k))


def _slice_candidates(hs):
    """Points of x+y+z=1 meeting every face of the lines ``hs`` and V's closure."""
    lines = [h.coeffs for h in hs] + [(1, 0, 0), (-1, 1, 0), (0, -1, 1)]

    def meet(f, g):
        # solve f.p = 0, g.p = 0, sum p = 1
        a = [list(f), list(g), [1, 1, 1]]
        det = (
            a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
        )
        if det == 0:
            return None
        cx = (f[1] * g[2] - f[2] * g[1], f[2] * g[0] - f[0] * g[2], f[0] * g[1] - f[1] * g[0])
        s = sum(cx)
        return tuple(Fraction(v, s) for v in cx)

    verts = {v for f, g in combinations(lines, 2) if (v := meet(f, g)) is not None}
    pts = set(verts)
    for f in lines:
        on = sorted(v for v in verts if sum(a * b for a, b in zip(f, v)) == 0)
        pts.update(tuple((a + b) / 2 for a, b in zip(u, w)) for u, w in zip(on, on[1:]))
    for a, b, c in combinations(sorted(verts), 3):
        pts.add(tuple((p + q + r) / 3 for p, q, r in zip(a, b, c)))
    n = 24
    pts.update((Fraction(i, n), Fraction(j, n), Fraction(n - i - j, n)) for i in range(n) for j in range(n - i))
    return [Point(*p) for p in pts if V.sat(Point(*p))]


@pytest.mark.parametrize(
    "hs",
    [
        [2 * X - Y],
        [X - Z + Y, 3 * X - Y],
        [2 * X - Y, X + Y - Z, 3 * X - Z],
        [X - 2 * Y + Z, 2 * X - Z, X + Y - Z, 4 * X - Y],
    ],
)
def test_feasibility_matches_point_oracle(hs):
    realised = {tuple((v > 0) - (v < 0) for v in (eval_form(h, p) for h in hs)) for p in _slice_candidates(hs)}
    for signs in product((-1, 0, 1), repeat=len(hs)):
        cons = []
        for h, s in zip(hs, signs):
            cons += [Ineq.gt(h)] if s > 0 else [Ineq.lt(h)] if s < 0 else [Ineq.ge(h), Ineq.le(h)]
        assert region_feasible(Region(cons), V) == (signs in realised), signs


def test_points_stay_exact():
    # zero-width intervals used to leak floats through int / int
    p = affine_feasible_point([((6,), -1, False), ((-6,), 1, False)], 1)
    assert p == (Fraction(1, 6),) and isinstance(p[0], Fraction)
    q = region_interior_point(Region([Ineq.ge(2 * X - Y), Ineq.le(2 * X - Y), Ineq.ge(X + Y - Z), Ineq.le(X + Y - Z)]), V)
    assert q == Point.of(1, 2, 3)
