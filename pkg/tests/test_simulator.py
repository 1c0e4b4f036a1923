from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from meshcert.simulator import (
    CENSORED,
    GameState,
    SimConfig,
    estimate_f,
    exact_h,
    exact_partial_sum,
    run_episode,
    simulate,
    step,
)


def test_step_outcomes_of_123():
    got = sorted(step(GameState((1, 2, 3)), d).stacks for d in range(6))
    assert got == sorted([(0, 3, 3), (2, 1, 3), (0, 2, 4), (2, 2, 2), (1, 0, 5), (1, 4, 1)])


def test_step_conserves_and_rejects():
    assert all(step(GameState((4, 5, 6)), d).total == 15 for d in range(6))
    assert all(step(GameState((1, 1, 1)), d).terminal for d in range(6))
    with pytest.raises(ValueError):
        step(GameState((0, 2, 4)), 0)
    with pytest.raises(ValueError):
        GameState((0, 0, 3))
    with pytest.raises(ValueError):
        step(GameState((1, 2, 3)), 6)


@given(st.tuples(*[st.integers(1, 10**6)] * 3), st.lists(st.integers(0, 5), max_size=40))
def test_trajectories_conserve_total(start, draws):
    s = GameState(start)
    for d in draws:
        if s.terminal:
            break
        s = step(s, d)
        assert s.total == sum(start)


def test_run_episode():
    for e in range(50):
        loser, rounds = run_episode((1, 1, 1), seed=3, episode=e)
        assert rounds == 1 and loser in (0, 1, 2)
        loser, rounds = run_episode((4, 5, 6), seed=3, episode=e, max_rounds=3)
        assert rounds <= 3
    with pytest.raises(ValueError):
        run_episode((0, 1, 2), 0, 0)


def test_run_episode_matches_vectorised_engine():
    seed, n = 17, 400
    stats = simulate((4, 5, 6), SimConfig(seed=seed, trials=n, max_rounds=30))
    counts = [0, 0, 0]
    hist = [0] * 30
    for e in range(n):
        loser, rounds = run_episode((4, 5, 6), seed, e, max_rounds=30)
        if loser != CENSORED:
            counts[loser] += 1
            if loser == 0:
                hist[rounds - 1] += 1
    assert counts == stats.loser_freq
    assert hist == stats.p1_hist


def test_symmetric_start():
    stats = simulate((1, 1, 1), SimConfig(seed=1, trials=100_000))
    for p in range(3):
        f, se = stats.loser(p)
        assert abs(f - 1 / 3) <= 3 * se
    f, se = estimate_f(1, 1, 1, SimConfig(seed=2, trials=100_000))
    assert abs(f - 1 / 3) <= 3 * se


@pytest.mark.parametrize("start", [(1, 1, 1), (4, 5, 6), (1, 2, 7), (3, 3, 10), (2, 9, 4)])
def test_martingale(start):
    stats = simulate(start, SimConfig(seed=7, trials=100_000))
    assert stats.censored + sum(stats.loser_freq) == stats.trials
    w, se = stats.winner(0)
    assert abs(w - start[0] / sum(start)) <= 3 * se


@pytest.mark.parametrize("x,z", [(1, 2), (1, 5), (3, 4), (2, 9)])
def test_smallest_with_two_equal_rich(x, z):
    f, se = estimate_f(x, z, z, SimConfig(seed=5, trials=50_000))
    assert f <= 2 / 3 + 3 * se


def test_censoring_tail():
    stats = simulate((5, 8, 13), SimConfig(seed=9, trials=200_000, max_rounds=20))
    rate, se = stats.freq(stats.censored)
    assert rate <= 0.5**20 + 3 * max(se, 1 / stats.trials)


def test_round_histogram_matches_exact():
    stats = simulate((4, 5, 6), SimConfig(seed=21, trials=200_000))
    for n in (1, 2, 3, 4):
        f, se = stats.round_freq(n)
        assert abs(f - float(exact_h(n, (4, 5, 6)))) <= 3 * se


def test_chunking_and_workers_do_not_matter():
    a = simulate((4, 5, 6), SimConfig(seed=4, trials=30_000, chunk=30_000))
    b = simulate((4, 5, 6), SimConfig(seed=4, trials=30_000, chunk=7_000, workers=3))
    assert (a.loser_freq, a.winner_freq, a.p1_hist, a.censored) == (b.loser_freq, b.winner_freq, b.p1_hist, b.censored)


def test_config_validation():
    with pytest.raises(ValueError):
        SimConfig(trials=0)
    with pytest.raises(ValueError):
        simulate((0, 1, 2), SimConfig(trials=10))


def test_exact_partial_sum_examples():
    assert exact_partial_sum(1, (4, 5, 6)) == Fraction(1, 3)
    assert exact_partial_sum(2, (4, 5, 6)) == Fraction(13, 36)
    assert exact_partial_sum(2, (5, 4, 6)) == exact_partial_sum(2, (5, 6, 4))
    assert exact_partial_sum(3, (Fraction(1, 2), 1, 1)) == exact_partial_sum(3, (1, 2, 2))
    with pytest.raises(ValueError):
        exact_partial_sum(0, (1, 2, 3))
