import random
from fractions import Fraction

import pytest

from meshcert.algebra import Ineq, Point, Region, V, X, Y, Z, eval_form
from meshcert.arrangement import (
    collect_hyperplanes,
    enumerate_cells,
    enumerate_cells_brute,
    global_min,
    meshitup,
)
from meshcert.expansion import IDENTITY, SWAP_XY, IndicatorTerm, PiecewiseSum, alpha, build_delta, build_level_diff, evaluate


def sign(v):
    return (v > 0) - (v < 0)


def random_int_v_point(rng):
    x = rng.randint(1, 400)
    y = x + rng.randint(1, 400)
    return Point.of(x, y, y + rng.randint(1, 400))


def test_collect_hyperplanes_examples():
    single = PiecewiseSum(V, (IndicatorTerm(1, 1, Region([Ineq.le(X - Y)])),))
    assert set(collect_hyperplanes(single)) == {X - Y, Y - Z, X}
    d1 = PiecewiseSum(
        V,
        (
            IndicatorTerm(1, 1, Region([Ineq.le(X - Y)])),
            IndicatorTerm(1, 1, Region([Ineq.le(X - Z)])),
            IndicatorTerm(1, -1, Region([Ineq.le(Y - X)])),
            IndicatorTerm(1, -1, Region([Ineq.le(Y - Z)])),
        ),
    )
    assert set(collect_hyperplanes(d1)) == {X - Y, X - Z, Y - Z, X}
    assert set(collect_hyperplanes(PiecewiseSum(V, ()))) == {X - Y, Y - Z, X}


def test_enumerate_cells_examples():
    assert len(enumerate_cells([X - Y], V)) == 1
    faces = enumerate_cells([2 * X - Y], V)
    assert sorted(c.signs for c in faces) == [(-1,), (0,), (1,)]
    faces = enumerate_cells([X - Y, 2 * X - Y], V)
    assert sorted(c.signs for c in faces) == [(-1, -1), (-1, 0), (-1, 1)]


def test_representatives_realise_their_signs():
    hs = collect_hyperplanes(build_delta(3))
    for cell in enumerate_cells(hs, V):
        assert V.sat(cell.rep)
        assert tuple(sign(eval_form(h, cell.rep)) for h in hs) == cell.signs


@pytest.mark.parametrize(
    "hs",
    [
        [2 * X - Y, X + Y - Z, 3 * X - Z],
        [X - 2 * Y + Z, 2 * X - Z, X + Y - Z, 4 * X - Y],
        [3 * X - Y, 2 * X - Z, X - Z + Y, 3 * X - Z, 2 * X - Y],
    ],
)
def test_splitting_matches_brute_force(hs):
    fast = enumerate_cells(hs, V)
    slow = enumerate_cells_brute(hs, V)
    assert [c.signs for c in fast] == [c.signs for c in slow]


def test_parallel_enumeration_is_identical():
    hs = collect_hyperplanes(build_delta(3))
    assert enumerate_cells(hs, V, threads=1) == enumerate_cells(hs, V, threads=3)


def test_face_coverage_and_lower_bound():
    ps = build_delta(3).shifted(-alpha(3))
    hs = collect_hyperplanes(ps)
    cells = enumerate_cells(hs, V)
    seen = {c.signs for c in cells}
    rep = global_min(ps)
    rng = random.Random(99)
    values = set()
    for _ in range(1000):
        p = random_int_v_point(rng)
        assert tuple(sign(eval_form(h, p)) for h in hs) in seen
        v = evaluate(ps, p)
        values.add(v)
        assert v >= rep.min_value
    assert rep.cell_count >= len(values)


def test_global_min_examples():
    assert global_min(build_delta(1)).min_value == Fraction(1, 6)
    rep = global_min(build_delta(3).shifted(-alpha(3)))
    assert rep.min_value == Fraction(-1, 60)
    assert evaluate(build_delta(3).shifted(-alpha(3)), Point.of(4, 5, 6)) == rep.min_value
    assert evaluate(build_delta(3).shifted(-alpha(3)), rep.witness) == rep.min_value


def test_boundary_face_needed_at_level_four():
    diff = build_level_diff(4)
    rep = global_min(diff)
    assert rep.min_value == Fraction(-11, 648)
    assert evaluate(diff, Point.of(7, 8, 23)) == rep.min_value
    assert 0 in rep.witness_signs and rep.witness_dim < 2
    cells = enumerate_cells(list(rep.hyperplanes), V)
    open_cells = [c for c in cells if 0 not in c.signs]
    assert min(evaluate(diff, c.rep) for c in open_cells) == Fraction(-7, 432)


def test_monotone_refinement(pair):
    s, t = pair
    prev = set(collect_hyperplanes(build_delta(1, s, t)))
    for n in (2, 3, 4):
        cur = set(collect_hyperplanes(build_delta(n, s, t)))
        assert prev <= cur
        prev = cur


def test_meshitup_same_substitution_not_found():
    res = meshitup(IDENTITY, IDENTITY, V, max_n=3)
    assert not res.found and res.n is None
    assert all(st.min_value == 0 for st in res.steps)


def test_meshitup_rejects_small_horizon():
    with pytest.raises(ValueError):
        meshitup(max_n=1)
