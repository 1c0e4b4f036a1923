"""Monte Carlo simulation of the maximal-bet game and an exact pointwise recursion.

Each round two of the three players are picked uniformly; they bet the
poorer one's whole stack on a fair coin.  The six (pair, coin) outcomes are
equally likely.  Random draws come from a counter-based hash of
``(seed, episode, round)``, so any split of episodes across workers gives
the same statistics.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import sqrt
from typing import Optional, Sequence

import numpy as np

__all__ = [
    "PAIRS",
    "CENSORED",
    "GameState",
    "SimConfig",
    "SimStats",
    "step",
    "run_episode",
    "simulate",
    "estimate_f",
    "exact_h",
    "exact_partial_sum",
]

# outcome d: pair PAIRS[d // 2]; the first player of the pair loses the flip when d is even
PAIRS = ((0, 1), (0, 2), (1, 2))
CENSORED = -1

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_DUEL_TAG = np.uint64(0xD1B54A32D192ED03)
_MASK64 = (1 << 64) - 1


def _mix(x: np.ndarray) -> np.ndarray:
    """splitmix64 finaliser on uint64 arrays (wrapping arithmetic)."""
    x = x ^ (x >> np.uint64(30))
    x = x * _M1
    x = x ^ (x >> np.uint64(27))
    x = x * _M2
    return x ^ (x >> np.uint64(31))


def _episode_keys(seed: int, episodes: np.ndarray) -> np.ndarray:
    base = _mix(np.array([(seed + int(_GOLDEN)) & _MASK64], dtype=np.uint64))
    return _mix(base ^ (episodes.astype(np.uint64) * _GOLDEN))


def _draws(keys: np.ndarray, rnd: int, tag: np.uint64 = np.uint64(0)) -> np.ndarray:
    """Outcome in ``[0, 6)`` for each key at round ``rnd`` (bias below 2^-61)."""
    salt = np.uint64((rnd * int(_M2) + int(_GOLDEN)) & _MASK64)
    h = _mix(keys ^ tag ^ salt)
    return (h % np.uint64(6)).astype(np.int64)


@dataclass(frozen=True)
class GameState:
    stacks: tuple[int, int, int]

    def __post_init__(self):
        if any(s < 0 for s in self.stacks):
            raise ValueError("stacks must be nonnegative")
        if sum(1 for s in self.stacks if s == 0) > 1:
            raise ValueError("at most one stack can be empty")

    @property
    def total(self) -> int:
        return sum(self.stacks)

    @property
    def terminal(self) -> bool:
        return 0 in self.stacks


def step(state: GameState, draw: int) -> GameState:
    """Apply outcome ``draw`` (0..5) to a live state."""
    if state.terminal:
        raise ValueError("step called on a finished game")
    if not 0 <= draw < 6:
        raise ValueError("draw must be in range(6)")
    i, j = PAIRS[draw // 2]
    loser, winner = (i, j) if draw % 2 == 0 else (j, i)
    s = list(state.stacks)
    bet = min(s[i], s[j])
    s[loser] -= bet
    s[winner] += bet
    return GameState(tuple(s))


@dataclass(frozen=True)
class SimConfig:
    seed: int = 0
    trials: int = 100_000
    max_rounds: int = 64
    workers: int = 1
    chunk: int = 250_000

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.max_rounds < 1:
            raise ValueError("max_rounds must be at least 1")


@dataclass
class SimStats:
    start: tuple[int, int, int]
    trials: int
    loser_freq: list = field(default_factory=lambda: [0, 0, 0])
    winner_freq: list = field(default_factory=lambda: [0, 0, 0])
    censored: int = 0
    winner_censored: int = 0
    # p1_hist[r - 1]: episodes where player 1 was the first out, in round r
    p1_hist: list = field(default_factory=list)

    def merge(self, other: SimStats) -> SimStats:
        n = max(len(self.p1_hist), len(other.p1_hist))
        hist = [
            (self.p1_hist[k] if k < len(self.p1_hist) else 0)
            + (other.p1_hist[k] if k < len(other.p1_hist) else 0)
            for k in range(n)
        ]
        return SimStats(
            self.start,
            self.trials + other.trials,
            [a + b for a, b in zip(self.loser_freq, other.loser_freq)],
            [a + b for a, b in zip(self.winner_freq, other.winner_freq)],
            self.censored + other.censored,
            self.winner_censored + other.winner_censored,
            hist,
        )

    def freq(self, count: int) -> tuple[float, float]:
        """Frequency with its binomial standard error."""
        p = count / self.trials
        return p, sqrt(max(p * (1 - p), 0.0) / self.trials)

    def loser(self, player: int) -> tuple[float, float]:
        return self.freq(self.loser_freq[player])

    def winner(self, player: int) -> tuple[float, float]:
        return self.freq(self.winner_freq[player])

    def round_freq(self, rnd: int) -> tuple[float, float]:
        k = self.p1_hist[rnd - 1] if rnd - 1 < len(self.p1_hist) else 0
        return self.freq(k)


def run_episode(start: Sequence[int], seed: int, episode: int, max_rounds: int = 64):
    """Play one game; returns ``(loser, rounds)`` with loser 0..2 or ``CENSORED``.

    Uses the same draws as :func:`simulate` for that episode index.
    """
    state = GameState(tuple(int(v) for v in start))
    if state.terminal:
        raise ValueError("start stacks must be positive")
    key = _episode_keys(seed, np.array([episode]))
    for rnd in range(1, max_rounds + 1):
        state = step(state, int(_draws(key, rnd)[0]))
        if state.terminal:
            return state.stacks.index(0), rnd
    return CENSORED, max_rounds


def _simulate_chunk(start, seed: int, first: int, count: int, max_rounds: int) -> SimStats:
    eps = np.arange(first, first + count, dtype=np.int64)
    keys = _episode_keys(seed, eps)
    s = np.tile(np.array(start, dtype=np.int64), (count, 1))
    idx = np.arange(count)
    stats = SimStats(tuple(start), count, p1_hist=[0] * max_rounds)
    pair_i = np.array([p[0] for p in PAIRS])
    pair_j = np.array([p[1] for p in PAIRS])
    live = idx
    loser = np.full(count, CENSORED, dtype=np.int64)
    for rnd in range(1, max_rounds + 1):
        if live.size == 0:
            break
        d = _draws(keys[live], rnd)
        i, j = pair_i[d // 2], pair_j[d // 2]
        first_loses = d % 2 == 0
        lo = np.where(first_loses, i, j)
        hi = np.where(first_loses, j, i)
        rows = s[live]
        bet = np.minimum(rows[np.arange(live.size), i], rows[np.arange(live.size), j])
        s[live, lo] -= bet
        s[live, hi] += bet
        out = s[live, lo] == 0
        done = live[out]
        loser[done] = lo[out]
        stats.p1_hist[rnd - 1] += int(np.count_nonzero(lo[out] == 0))
        live = live[~out]
    for p in range(3):
        stats.loser_freq[p] = int(np.count_nonzero(loser == p))
    stats.censored = int(np.count_nonzero(loser == CENSORED))

    # the two survivors keep betting the poorer stack until one is broke
    fin = np.flatnonzero(loser != CENSORED)
    others = np.array([[1, 2], [0, 2], [0, 1]])
    a_idx = others[loser[fin], 0]
    b_idx = others[loser[fin], 1]
    a = s[fin, a_idx]
    b = s[fin, b_idx]
    winner = np.full(count, CENSORED, dtype=np.int64)
    live = np.arange(fin.size)
    for rnd in range(1, max_rounds + 1):
        if live.size == 0:
            break
        coin = _draws(keys[fin[live]], rnd, _DUEL_TAG) % 2 == 0
        bet = np.minimum(a[live], b[live])
        a[live] = np.where(coin, a[live] + bet, a[live] - bet)
        b[live] = np.where(coin, b[live] - bet, b[live] + bet)
        ended = (a[live] == 0) | (b[live] == 0)
        e = live[ended]
        winner[fin[e]] = np.where(a[e] > 0, a_idx[e], b_idx[e])
        live = live[~ended]
    for p in range(3):
        stats.winner_freq[p] = int(np.count_nonzero(winner == p))
    stats.winner_censored = count - sum(stats.winner_freq)
    return stats


def _chunk_job(args):
    return _simulate_chunk(*args)


def simulate(start: Sequence[int], cfg: SimConfig) -> SimStats:
    """Play ``cfg.trials`` episodes from ``start``."""
    start = tuple(int(v) for v in start)
    if len(start) != 3 or min(start) < 1:
        raise ValueError("start needs three positive stacks")
    if sum(start) * 2 >= 1 << 62:
        raise OverflowError("stack total too large for int64 simulation")
    jobs = [
        (start, cfg.seed, first, min(cfg.chunk, cfg.trials - first), cfg.max_rounds)
        for first in range(0, cfg.trials, cfg.chunk)
    ]
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            parts = list(pool.map(_chunk_job, jobs))
    else:
        parts = [_chunk_job(j) for j in jobs]
    total = parts[0]
    for p in parts[1:]:
        total = total.merge(p)
    return total


def estimate_f(x: int, y: int, z: int, cfg: SimConfig) -> tuple[float, float]:
    """Estimated probability that player 1 is the first one out, with stderr."""
    return simulate((x, y, z), cfg).loser(0)


# ---------------------------------------------------------------------------
# exact recursion at concrete points


@lru_cache(maxsize=None)
def _h(n: int, a: Fraction, b: Fraction, c: Fraction) -> Fraction:
    if a <= 0 or b <= 0 or c <= 0:
        return Fraction(0)
    if n == 1:
        return Fraction((a <= b) + (a <= c), 6)
    kids = (
        (2 * a, b - a, c),
        (2 * a, b, c - a),
        (a - b, 2 * b, c),
        (a, 2 * b, c - b),
        (a - c, b, 2 * c),
        (a, b - c, 2 * c),
    )
    return sum((_h(n - 1, *k) for k in kids), Fraction(0)) / 6


def exact_h(n: int, stacks: Sequence) -> Fraction:
    """Probability that player 1 goes out in exactly round ``n``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return _h(n, *(Fraction(v) for v in stacks))


def exact_partial_sum(n: int, stacks: Sequence) -> Fraction:
    """Probability that player 1 goes out within the first ``n`` rounds."""
    if n < 1:
        raise ValueError("n must be at least 1")
    st = tuple(Fraction(v) for v in stacks)
    return sum((_h(j, *st) for j in range(1, n + 1)), Fraction(0))
