import random
from fractions import Fraction

import numpy as np
import pytest

from meshcert.algebra import Ineq, Point, Region, V, X, Y, Z
from meshcert.arrangement import global_min
from meshcert.expansion import (
    IDENTITY,
    SWAP_XY,
    IndicatorTerm,
    PiecewiseSum,
    alpha,
    build_delta,
    build_level_diff,
)
from meshcert.milp import (
    LinearConstraint,
    Status,
    build_milp_full,
    build_milp_h_diff,
    certify_decomposed,
    eps_reduce,
    model_from_sum,
    solve,
    to_big_m,
)

F = Fraction


def test_eps_reduce_examples():
    assert eps_reduce([Ineq.gt(X - Y)], 1) == [LinearConstraint(X - Y, ">=", F(1))]
    assert eps_reduce([Ineq.le(X - Y)], 1) == [LinearConstraint(Y - X, ">=", F(0))]
    assert eps_reduce([LinearConstraint(X - Y, "<=")]) == [LinearConstraint(X - Y, "<=")]
    reduced = eps_reduce(sorted(V.constraints), 1)
    assert set(reduced) == {
        LinearConstraint(X, ">=", F(1)),
        LinearConstraint(Y - X, ">=", F(1)),
        LinearConstraint(Z - Y, ">=", F(1)),
    }
    assert eps_reduce([LinearConstraint(X, "<")], F(1, 2)) == [LinearConstraint(X, "<=", F(-1, 2))]


def test_eps_reduce_rejects_bad_input():
    with pytest.raises(ValueError):
        eps_reduce([LinearConstraint(X, ">=", 3)])
    with pytest.raises(ValueError):
        eps_reduce([Ineq.gt(X)], 0)


def test_full_model_level_one():
    pruned = build_milp_full(1, include_cap=False)
    assert len(pruned.regions) == 3  # {y <= x} is empty in V
    full = build_milp_full(1, include_cap=False, prune=False)
    assert len(full.regions) == 4
    assert sorted(r.coef for r in full.regions) == [F(-1, 6), F(-1, 6), F(1, 6), F(1, 6)]
    comparison_planes = {full.literals[l].hyperplane for r in full.regions for l in r.literals}
    assert comparison_planes == {X - Y, X - Z, Y - Z}
    assert full.offset == -alpha(1)


def test_cap_toggle_and_size():
    assert build_milp_full(2, include_cap=True).include_cap
    assert not build_milp_full(2, include_cap=False).include_cap
    m4 = build_milp_full(4)
    assert len(m4.regions) <= F(12, 5) * (6**4 - 1)


def test_shared_literals():
    m = build_milp_full(3, include_cap=False)
    assert len(set(m.literals)) == len(m.literals)
    for term, reg in zip(m.source.terms, m.regions):
        assert {m.literals[l] for l in reg.literals} == set(term.region.constraints)
        assert reg.coef == term.coefficient


def test_conjunction_linking():
    m = build_milp_full(3, include_cap=False)
    rng = random.Random(4)
    for _ in range(50):
        x = rng.randint(1, 50)
        y = x + rng.randint(1, 50)
        p = Point.of(x, y, y + rng.randint(1, 50))
        q, lits, regs = m.eps_witness(p)
        assert m.check(q, lits, regs) == []
        assert m.objective(regs) == m.source(p)
        for k, r in enumerate(m.regions):
            wrong = list(regs)
            wrong[k] = 1 - wrong[k]
            assert m.check(q, lits, wrong), k


def test_solve_examples():
    assert solve(build_milp_full(4, include_cap=True)).status is Status.INFEASIBLE
    r3 = solve(build_milp_full(3, include_cap=True))
    assert (r3.status, r3.value) == (Status.OPTIMAL, F(-1, 60))
    one = PiecewiseSum(Region([Ineq.gt(X), Ineq.gt(Y), Ineq.gt(Z)]), (IndicatorTerm(0, 1, Region([Ineq.ge(X - Y)])),))
    r = solve(model_from_sum(one))
    assert (r.status, r.value) == (Status.OPTIMAL, 0)
    assert r.literal_values == (0,) and r.region_values == (0,)


def test_level_diff_models(pair):
    s, t = pair
    want = {IDENTITY: F(-11, 648)}.get(s, F(-7, 324))
    r = solve(build_milp_h_diff(4, s, t))
    assert (r.status, r.value) == (Status.OPTIMAL, want)
    assert build_level_diff(4, s, t)(r.witness) == want
    assert solve(build_milp_h_diff(3, s, s)).value == 0


def test_decomposition_examples(pair):
    s, t = pair
    d = certify_decomposed(4, s, t)
    if s == IDENTITY:
        assert (d.previous.value, d.level_diff.value) == (F(-1, 60), F(-11, 648))
        assert (d.bound, d.delta_bound) == (F(53, 3240), F(43, 648))
    else:
        assert (d.previous.value, d.level_diff.value) == (F(-23, 1080), F(-7, 324))
        assert (d.bound, d.delta_bound) == (F(23, 3240), F(37, 648))
    same = certify_decomposed(3, s, s)
    assert same.bound == -alpha(2) + alpha(3) == -alpha(3)
    with pytest.raises(ValueError):
        certify_decomposed(1, s, t)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_solver_matches_oracle(n, pair):
    s, t = pair
    oracle = global_min(build_delta(n, s, t).shifted(-alpha(n))).min_value
    m = build_milp_full(n, s, t, include_cap=False)
    r = solve(m)
    assert r.value == oracle
    assert m.check(r.witness, r.literal_values, r.region_values) == []
    assert m.source(r.witness) == oracle
    if n <= 2:
        assert solve(m, lp="fm").value == oracle


def test_anytime_bounds_are_valid(pair):
    s, t = pair
    m = build_milp_full(3, s, t, include_cap=False)
    full = solve(m)
    for budget in range(0, full.node_count + 2):
        r = solve(m, node_budget=budget)
        assert r.value <= full.value
        if budget < full.node_count:
            assert r.status is Status.BOUND_ONLY
        else:
            assert (r.status, r.value, r.witness, r.node_count) == (
                full.status, full.value, full.witness, full.node_count)


def test_thread_count_independence():
    m = build_milp_full(3, include_cap=False)
    a, b = solve(m, threads=1), solve(m, threads=3)
    assert (a.value, a.witness, a.node_count) == (b.value, b.witness, b.node_count)


@pytest.mark.parametrize("n", [1, 2])
def test_big_m_export_against_scipy(n):
    scipy_opt = pytest.importorskip("scipy.optimize")
    m = build_milp_full(n, include_cap=False)
    bm = to_big_m(m, (0, 60))
    res = scipy_opt.milp(
        c=np.array([float(v) for v in bm.c]),
        integrality=np.array(bm.integrality),
        bounds=scipy_opt.Bounds([float(v) for v in bm.lower], [float(v) for v in bm.upper]),
        constraints=scipy_opt.LinearConstraint(
            np.array([[float(v) for v in row] for row in bm.A]), -np.inf, np.array([float(v) for v in bm.b])
        ),
    )
    assert res.success
    assert abs(res.fun + float(bm.offset) - float(solve(m).value)) < 1e-7
