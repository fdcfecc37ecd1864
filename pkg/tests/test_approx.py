import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from rankgames import MixedProfile, ScoreSymmetricGame, normalize, verify
from rankgames.approx import (
    compositions,
    epsilon_round,
    fptas_delta,
    fptas_replay,
    fptas_solve,
    ptas_candidates,
    ptas_setup,
    ptas_solve,
    round_costs,
    strategy_grid,
)
from rankgames.exact import solve_pure_two_action
from rankgames.oracle import brute_force_two_player
from rankgames.reductions import score_symmetrize


def _binary(d, c):
    return ScoreSymmetricGame((1, 2), ((0, c),) * d, (1,) + (0,) * (d - 1))


def _random_symmetric(rng, d, n, den=20):
    rows = []
    for _ in range(d):
        vals = sorted(rng.sample(range(den), n))
        rows.append(tuple(F(v - vals[0], den) for v in vals))
    return ScoreSymmetricGame(tuple(range(1, n + 1)), tuple(rows), (1,) + (0,) * (d - 1))


def test_round_half_half():
    assert epsilon_round((F(1, 2), F(1, 2)), F(1, 3)) == (F(2, 3), F(1, 3))


def test_round_identity_on_grid():
    x = (F(1, 4), F(0), F(3, 4))
    assert epsilon_round(x, F(1, 4)) == x


def test_round_rejects_non_inverse_integer():
    with pytest.raises(ValueError):
        epsilon_round((F(1),), F(2, 5))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 50), min_size=1, max_size=10).filter(any), st.sampled_from([4, 10, 7]))
def test_round_postconditions(weights, m):
    x = [F(w, sum(weights)) for w in weights]
    y = epsilon_round(x, F(1, m))
    assert sum(y) == 1
    assert all((v * m).denominator == 1 and v >= 0 for v in y)
    for j in range(1, len(x) + 1):
        assert abs(sum(y[:j]) - sum(x[:j])) < F(1, m)


def test_compositions_count_and_order():
    comps = list(compositions(4, 3))
    assert len(comps) == math.comb(6, 2)
    assert comps[0] == (4, 0, 0)
    assert len(set(comps)) == len(comps)


def test_grid_size_bound():
    grid = strategy_grid(3, 6)
    assert len(grid) <= (6 + 1) ** 3
    assert all(sum(v) == 1 for v in grid)


def test_ptas_candidate_count_and_fixture():
    g = _binary(4, F(1, 5))
    setup = ptas_setup(g, F(1, 2))
    candidates = [p for p, _ in ptas_candidates(setup)]
    assert len(candidates) == setup.candidate_count() == math.comb(4 + 5 - 1, 4)
    assert solve_pure_two_action(g) in candidates
    out = ptas_solve(g, F(1, 2))
    assert verify(round_costs(g, F(1, 2)), out).epsilon <= F(1, 2)
    assert verify(g, out).epsilon <= 1


def test_ptas_candidate_count_with_types():
    g = ScoreSymmetricGame((1, 2), ((0, F(1, 5)), (0, F(1, 5)), (0, F(4, 5))), (1, 0, 0))
    setup = ptas_setup(g, F(1, 2))
    sizes = sorted(len(t) for t in setup.types)
    assert sizes == [1, 2]
    assert sum(1 for _ in ptas_candidates(setup)) == setup.candidate_count()


def test_ptas_symmetrized_alternating_game(alt):
    sym, _ = score_symmetrize(alt)
    assert verify(sym, ptas_solve(sym, F(1, 4))).epsilon <= F(1, 2)


def test_ptas_single_player():
    g = ScoreSymmetricGame((1, 2, 3), ((0, F(1, 3), F(1, 2)),), (1,))
    out = ptas_solve(g, F(1, 3))
    assert out.rows == ((1, 0, 0),)
    assert verify(g, out).epsilon == 0


def test_fptas_symmetrized_alternating_game(alt):
    sym, _ = score_symmetrize(alt)
    out = fptas_solve(sym, F(1, 4))
    assert verify(sym, out).epsilon <= (sym.num_strategies + 2) * F(1, 4)


@pytest.mark.parametrize("seed", range(4))
def test_fptas_random_four_strategies(seed):
    g = _random_symmetric(random.Random(seed), 2, 4)
    stats = {}
    out = fptas_solve(g, F(1, 4), stats=stats)
    assert verify(g, out).epsilon <= F(3, 2)
    assert stats["delta"] == F(1, 576)
    loose = {}
    fptas_solve(g, F(1, 4), delta_override=F(1, 50), stats=loose)
    assert loose["delta"] == F(1, 50)


def test_fptas_is_deterministic():
    g = _random_symmetric(random.Random(3), 2, 5)
    assert fptas_solve(g, F(1, 4)) == fptas_solve(g, F(1, 4))


def test_fptas_delta_formula():
    assert fptas_delta(F(1, 4), 2) == F(1, 576)
    assert fptas_delta(F(3, 10), 3) == F(1, 4 * 9 * 27 * 4)


def test_grid_aligned_pure_equilibrium_survives():
    for c in (F(9, 20), F(1, 5)):
        g = _binary(4, c)
        pure = solve_pure_two_action(g)
        assert fptas_replay(g, F(1, 4), pure, fptas_delta(F(1, 4), 4))


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 3), st.integers(0, 10**6))
def test_rounded_equilibria_survive_filters(n, seed):
    eps = F(1, 4)
    g = _random_symmetric(random.Random(seed), 2, n)
    delta = fptas_delta(eps, 2)
    rounded = round_costs(g, delta)
    for ne in brute_force_two_player(rounded.to_ranking_game()):
        grid = MixedProfile(tuple(epsilon_round(row, delta) for row in ne.rows))
        assert fptas_replay(g, eps, grid, delta)

