"""Payoffs with tie-sharing, expected payoffs and ε-well-supported certificates."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from rankgames.game import MixedProfile, RankingGame, ScoreSymmetricGame
from rankgames.rational import ONE, ZERO, format_rat

# enumeration is used by ``verify(method="auto")`` below this many opponent profiles
ENUM_LIMIT = 4096


def _prefix(values: Sequence[Fraction]) -> list[Fraction]:
    out = [ZERO]
    acc = ZERO
    for v in values:
        acc += v
        out.append(acc)
    return out


def _scores_and_costs(game):
    """Per-player (scores, costs) tuples for either game flavour."""
    if isinstance(game, ScoreSymmetricGame):
        return [(game.scores, row) for row in game.costs]
    return [(game.scores(i), game.costs(i)) for i in range(game.num_players)]


def pure_payoffs(game, choices: Sequence[int]) -> tuple[Fraction, ...]:
    """Payoff of every player when player ``i`` plays strategy ``choices[i]``.

    A tie group occupying rank positions ``p..q`` splits ``u_p + ... + u_q``
    equally.
    """
    sc = _scores_and_costs(game)
    d = len(sc)
    if len(choices) != d:
        raise ValueError("one strategy index per player required")
    prefix = _prefix(game.prize_vector())
    chosen = [sc[i][0][choices[i]] for i in range(d)]
    out = [ZERO] * d
    order = sorted(range(d), key=lambda i: chosen[i], reverse=True)
    pos = 0
    for _, group in itertools.groupby(order, key=lambda i: chosen[i]):
        members = list(group)
        share = (prefix[pos + len(members)] - prefix[pos]) / len(members)
        for i in members:
            out[i] = share - sc[i][1][choices[i]]
        pos += len(members)
    return tuple(out)


def expected_payoff_enum(game, profile: MixedProfile, player: int, strategy: int) -> Fraction:
    """Expected payoff of a pure strategy by enumerating opponents' pure profiles."""
    d = len(profile.rows)
    supports = [
        [strategy] if k == player else [j for j, x in enumerate(profile.rows[k]) if x > 0]
        for k in range(d)
    ]
    total = ZERO
    for combo in itertools.product(*supports):
        weight = ONE
        for k, j in enumerate(combo):
            if k != player:
                weight *= profile.rows[k][j]
        total += weight * pure_payoffs(game, combo)[player]
    return total


@dataclass(frozen=True)
class TieCountDistribution:
    """Probability that ``h`` opponents score strictly higher and ``t`` tie.

    Sparse: absent ``(h, t)`` keys have probability zero.
    """

    table: dict

    @classmethod
    def fold(cls, categories) -> "TieCountDistribution":
        """Fold opponents given as ``(above, tied, below)`` probability triples."""
        table = {(0, 0): ONE}
        for above, tied, below in categories:
            if below == 1:
                continue
            nxt: dict = {}
            for (h, t), p in table.items():
                if below:
                    nxt[(h, t)] = nxt.get((h, t), ZERO) + p * below
                if above:
                    key = (h + 1, t)
                    nxt[key] = nxt.get(key, ZERO) + p * above
                if tied:
                    key = (h, t + 1)
                    nxt[key] = nxt.get(key, ZERO) + p * tied
            table = nxt
        return cls(table)

    def total(self) -> Fraction:
        return sum(self.table.values(), ZERO)

    def expected_share(self, prize_prefix: Sequence[Fraction]) -> Fraction:
        """Expected prize of a player who ties with ``t`` others below ``h`` leaders."""
        acc = ZERO
        for (h, t), p in self.table.items():
            acc += p * (prize_prefix[h + t + 1] - prize_prefix[h]) / (t + 1)
        return acc


def _categories(game, profile: MixedProfile, player: int, strategy: int):
    sc = _scores_and_costs(game)
    s = sc[player][0][strategy]
    cats = []
    for k, row in enumerate(profile.rows):
        if k == player:
            continue
        scores = sc[k][0]
        above = tied = below = ZERO
        for x, sk in zip(row, scores):
            if not x:
                continue
            if sk > s:
                above += x
            elif sk == s:
                tied += x
            else:
                below += x
        cats.append((above, tied, below))
    return cats


def expected_payoff_anonymous(game, profile: MixedProfile, player: int, strategy: int) -> Fraction:
    """Expected payoff via the (above, tied) opponent-count recursion.

    Polynomial in the number of players; exact for any ranking game, although
    score-symmetric games are the intended input.
    """
    sc = _scores_and_costs(game)
    dist = TieCountDistribution.fold(_categories(game, profile, player, strategy))
    return dist.expected_share(_prefix(game.prize_vector())) - sc[player][1][strategy]


def payoff_row(game, profile: MixedProfile, player: int, method: str = "anonymous") -> tuple[Fraction, ...]:
    """Expected payoff of each pure strategy of ``player`` against ``profile``."""
    n = len(_scores_and_costs(game)[player][0])
    if method == "enum":
        return tuple(expected_payoff_enum(game, profile, player, j) for j in range(n))
    if isinstance(game, ScoreSymmetricGame):
        return _symmetric_payoff_row(game, profile, player)
    return tuple(expected_payoff_anonymous(game, profile, player, j) for j in range(n))


def _symmetric_payoff_row(game: ScoreSymmetricGame, profile: MixedProfile, player: int):
    prize_prefix = _prefix(game.prize_vector())
    prefixes = [_prefix(row) for k, row in enumerate(profile.rows) if k != player]
    rows = [row for k, row in enumerate(profile.rows) if k != player]
    out = []
    for j in range(game.num_strategies):
        cats = [(ONE - pre[j + 1], row[j], pre[j]) for pre, row in zip(prefixes, rows)]
        dist = TieCountDistribution.fold(cats)
        out.append(dist.expected_share(prize_prefix) - game.costs[player][j])
    return tuple(out)


@dataclass(frozen=True)
class EquilibriumCertificate:
    """Exact evaluation of a profile.

    ``regrets[i]`` is the well-supported regret of player ``i`` (worst
    supported strategy against the best pure reply); ``gaps[i]`` is the
    weaker best-response gap of the mixed strategy as a whole.
    """

    profile: MixedProfile
    payoffs: tuple[tuple[Fraction, ...], ...]
    values: tuple[Fraction, ...]
    regrets: tuple[Fraction, ...]
    gaps: tuple[Fraction, ...]
    epsilon: Fraction
    welfare_cost: Fraction
    welfare_score: Fraction

    @property
    def is_exact_nash(self) -> bool:
        return self.epsilon == 0

    def to_dict(self) -> dict:
        return {
            "profile": [[format_rat(x) for x in row] for row in self.profile.rows],
            "epsilon": format_rat(self.epsilon),
            "regrets": [format_rat(r) for r in self.regrets],
            "gaps": [format_rat(g) for g in self.gaps],
            "values": [format_rat(v) for v in self.values],
            "welfare": {"cost": format_rat(self.welfare_cost), "score": format_rat(self.welfare_score)},
        }


def _choose_method(game, profile: MixedProfile) -> str:
    if isinstance(game, ScoreSymmetricGame):
        return "anonymous"
    size = 1
    for row in profile.rows:
        size *= sum(1 for x in row if x > 0)
    return "enum" if size <= ENUM_LIMIT else "anonymous"


def verify(game, profile: MixedProfile, method: str = "auto") -> EquilibriumCertificate:
    """Certify the smallest ε for which ``profile`` is ε-well-supported.

    ``method`` is ``"enum"``, ``"anonymous"`` or ``"auto"``.
    """
    sc = _scores_and_costs(game)
    if not profile.matches([len(s) for s, _ in sc]):
        raise ValueError("profile shape does not match the game")
    if method == "auto":
        method = _choose_method(game, profile)
    payoffs, values, regrets, gaps = [], [], [], []
    cost_total = score_total = ZERO
    for i, row in enumerate(profile.rows):
        pi = payoff_row(game, profile, i, method)
        best = max(pi)
        supported = [pi[j] for j, x in enumerate(row) if x > 0]
        value = sum((x * p for x, p in zip(row, pi)), ZERO)
        payoffs.append(pi)
        values.append(value)
        regrets.append(max(ZERO, best - min(supported)))
        gaps.append(max(ZERO, best - value))
        scores, costs = sc[i]
        cost_total += sum((x * c for x, c in zip(row, costs)), ZERO)
        score_total += sum((x * s for x, s in zip(row, scores)), ZERO)
    return EquilibriumCertificate(
        profile=profile,
        payoffs=tuple(payoffs),
        values=tuple(values),
        regrets=tuple(regrets),
        gaps=tuple(gaps),
        epsilon=max(regrets),
        welfare_cost=cost_total,
        welfare_score=score_total,
    )
