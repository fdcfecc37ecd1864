import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from conftest import SHARED_LADDER_NE
from rankgames import (
    MixedProfile,
    RankingGame,
    expected_payoff_anonymous,
    expected_payoff_enum,
    pure_payoffs,
    verify,
)
from rankgames.payoffs import TieCountDistribution


def test_alternating_game_matrix(alt):
    assert pure_payoffs(alt, (0, 0)) == (1, 0)
    assert pure_payoffs(alt, (0, 1)) == (0, F(1, 2))
    assert pure_payoffs(alt, (1, 0)) == (F(1, 2), 0)
    assert pure_payoffs(alt, (1, 1)) == (F(1, 2), F(-1, 2))


def test_shared_ladder_game_matrix(ladder):
    table = {
        (0, 0): (F(1, 2), F(1, 2)), (0, 1): (0, F(2, 3)), (0, 2): (0, F(1, 3)),
        (1, 0): (F(1, 3), 0), (1, 1): (F(-1, 6), F(1, 6)), (1, 2): (F(-2, 3), F(1, 3)),
        (2, 0): (F(1, 5), 0), (2, 1): (F(1, 5), F(-1, 3)), (2, 2): (F(-3, 10), F(-1, 6)),
    }
    for choice, expected in table.items():
        assert pure_payoffs(ladder, choice) == expected


def test_ties_split_rank_positions():
    g = RankingGame.from_lists([[0], [0], [0]], [[1], [1], [2]], [F(3), F(2), F(1)])
    assert pure_payoffs(g, (0, 0, 0)) == (F(3, 2), F(3, 2), 3)


def test_verify_alternating_game(alt):
    assert verify(alt, MixedProfile.uniform((2, 2))).epsilon == 0
    cert = verify(alt, MixedProfile.pure((0, 0), (2, 2)))
    assert cert.epsilon == F(1, 2)
    assert not cert.is_exact_nash


def test_verify_shared_ladder_game_both_routes(ladder):
    prof = MixedProfile(SHARED_LADDER_NE)
    assert verify(ladder, prof, "enum").epsilon == 0
    assert verify(ladder, prof, "anonymous").epsilon == 0


def test_verify_rejects_wrong_shape(alt):
    with pytest.raises(ValueError):
        verify(alt, MixedProfile.uniform((2, 3)))


def test_certificate_serialization(alt):
    data = verify(alt, MixedProfile.uniform((2, 2))).to_dict()
    assert data["epsilon"] == "0/1"
    assert data["profile"] == [["1/2", "1/2"], ["1/2", "1/2"]]
    assert set(data["welfare"]) == {"cost", "score"}


def test_well_supported_regret_dominates_gap(alt):
    prof = MixedProfile(((F(1, 4), F(3, 4)), (F(1, 3), F(2, 3))))
    cert = verify(alt, prof)
    assert all(g <= r for g, r in zip(cert.gaps, cert.regrets))


def test_fold_is_a_distribution():
    dist = TieCountDistribution.fold([(F(1, 3), F(1, 3), F(1, 3)), (F(1, 2), 0, F(1, 2))])
    assert dist.total() == 1


def _random_game(rng, d, n, ties):
    costs, scores = [], []
    for _ in range(d):
        costs.append(sorted(F(c, 12) for c in rng.sample(range(12), n)))
        pool = range(1, n + 2) if ties else range(1, 4 * n * d)
        scores.append(sorted(rng.sample(pool, n)))
    prizes = sorted((F(rng.randint(0, 6), 6) for _ in range(d)), reverse=True)
    return RankingGame.from_lists(costs, scores, prizes)


def _random_profile(rng, counts):
    rows = []
    for n in counts:
        w = [rng.randint(0, 3) for _ in range(n)]
        if not any(w):
            w[rng.randrange(n)] = 1
        rows.append(tuple(F(x, sum(w)) for x in w))
    return MixedProfile(tuple(rows))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(1, 3), st.booleans(), st.integers(0, 10**9))
def test_anonymous_matches_enumeration(d, n, ties, seed):
    rng = random.Random(seed)
    g = _random_game(rng, d, n, ties)
    prof = _random_profile(rng, g.strategy_counts)
    for i in range(d):
        for j in range(n):
            assert expected_payoff_anonymous(g, prof, i, j) == expected_payoff_enum(g, prof, i, j)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4), st.integers(1, 3), st.integers(0, 10**9))
def test_pure_profile_expectation_is_pure_payoff(d, n, seed):
    rng = random.Random(seed)
    g = _random_game(rng, d, n, True)
    choice = tuple(rng.randrange(n) for _ in range(d))
    prof = MixedProfile.pure(choice, g.strategy_counts)
    pay = pure_payoffs(g, choice)
    for i in range(d):
        assert expected_payoff_anonymous(g, prof, i, choice[i]) == pay[i]


def test_reference_expectations(alt, ladder):
    assert expected_payoff_enum(alt, MixedProfile.uniform((2, 2)), 0, 0) == F(1, 2)
    prof = MixedProfile(((1, 0, 0), SHARED_LADDER_NE[1]))
    assert expected_payoff_enum(ladder, prof, 0, 0) == F(1, 5)
    g = RankingGame.from_lists([[0, 0], [0, 0]], [[1, 2], [1, 2]], [1, 0])
    assert expected_payoff_anonymous(g, MixedProfile(((1, 0), (F(1, 2), F(1, 2)))), 0, 0) == F(1, 4)
    g = RankingGame.from_lists([[0, 1], [0, 1], [0, 1]], [[1, 2]] * 3, [1, 0, 0])
    assert expected_payoff_anonymous(g, MixedProfile.pure((0, 0, 0), (2, 2, 2)), 0, 0) == F(1, 3)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(1, 3), st.integers(0, 10**9))
def test_tie_sharing_conserves_prizes(d, n, seed):
    rng = random.Random(seed)
    g = _random_game(rng, d, n, True)
    choice = tuple(rng.randrange(n) for _ in range(d))
    pay = pure_payoffs(g, choice)
    assert sum(p + g.costs(i)[choice[i]] for i, p in enumerate(pay)) == sum(g.prize_vector())


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4), st.integers(0, 10**9))
def test_stronger_at_equal_cost_is_no_worse(d, seed):
    rng = random.Random(seed)
    g = _random_game(rng, d, 3, True)
    prof = _random_profile(rng, g.strategy_counts)
    # compare two hypothetical strategies with the same cost by swapping scores
    for i in range(d):
        lo = RankingGame.from_lists(
            [[0] if k == i else list(g.costs(k)) for k in range(d)],
            [[g.scores(i)[0]] if k == i else list(g.scores(k)) for k in range(d)],
            g.prizes,
        )
        hi = RankingGame.from_lists(
            [[0] if k == i else list(g.costs(k)) for k in range(d)],
            [[g.scores(i)[-1]] if k == i else list(g.scores(k)) for k in range(d)],
            g.prizes,
        )
        rows = tuple((1,) if k == i else r for k, r in enumerate(prof.rows))
        p = MixedProfile(rows)
        assert expected_payoff_anonymous(hi, p, i, 0) >= expected_payoff_anonymous(lo, p, i, 0)
