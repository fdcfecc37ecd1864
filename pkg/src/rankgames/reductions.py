"""Score-symmetrization with lift-back, and the linear-prize polymatrix form."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from rankgames.game import MixedProfile, RankingGame, ScoreSymmetricGame, is_normalized
from rankgames.rational import ONE, ZERO, format_rat, parse_rat

ORIGINAL, COPY, PAD = "original", "copy", "pad"


@dataclass(frozen=True)
class LadderEntry:
    """One rung of a player's symmetrized ladder.

    ``target`` is the original strategy index this rung stands for: itself
    for ``original`` rungs, the weakly dominating strategy otherwise.
    """

    score: Fraction
    source: str
    target: int


@dataclass(frozen=True)
class SymmetrizationMap:
    ladder: tuple[Fraction, ...]
    entries: tuple[tuple[LadderEntry, ...], ...]
    original_counts: tuple[int, ...]

    def is_identity(self) -> bool:
        return all(e.source == ORIGINAL for row in self.entries for e in row)

    def embed(self, player: int, strategy: int) -> int:
        """Ladder position of an original strategy."""
        for k, e in enumerate(self.entries[player]):
            if e.source == ORIGINAL and e.target == strategy:
                return k
        raise KeyError((player, strategy))

    def to_dict(self) -> dict:
        return {
            "ladder": [format_rat(s) for s in self.ladder],
            "players": [
                [{"score": format_rat(e.score), "source": e.source, "target": e.target} for e in row]
                for row in self.entries
            ],
            "original_counts": list(self.original_counts),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SymmetrizationMap":
        return cls(
            tuple(parse_rat(s) for s in data["ladder"]),
            tuple(
                tuple(LadderEntry(parse_rat(e["score"]), e["source"], int(e["target"])) for e in row)
                for row in data["players"]
            ),
            tuple(int(n) for n in data["original_counts"]),
        )


def score_symmetrize(game: RankingGame) -> tuple[ScoreSymmetricGame, SymmetrizationMap]:
    """Give every player a strategy at every score used by anyone.

    A missing score ``s`` is filled with a copy of the player's weakest
    strategy scoring above ``s`` (same cost, so it is weakly dominated), or
    with a cost-1 strategy when no such strategy exists.  Cost rows of the
    result are non-decreasing rather than strictly increasing.
    """
    if not is_normalized(game):
        raise ValueError("score_symmetrize expects a normalized game")
    ladder = tuple(sorted({s.score for row in game.players for s in row}))
    costs, entries = [], []
    for row in game.players:
        by_score = {s.score: j for j, s in enumerate(row)}
        crow, erow = [], []
        for s in ladder:
            if s in by_score:
                j = by_score[s]
                crow.append(row[j].cost)
                erow.append(LadderEntry(s, ORIGINAL, j))
                continue
            above = next((j for j, st in enumerate(row) if st.score > s), None)
            if above is None:
                crow.append(ONE)
                erow.append(LadderEntry(s, PAD, 0))
            else:
                crow.append(row[above].cost)
                erow.append(LadderEntry(s, COPY, above))
        costs.append(tuple(crow))
        entries.append(tuple(erow))
    sym = ScoreSymmetricGame(ladder, tuple(costs), game.prizes)
    return sym, SymmetrizationMap(ladder, tuple(entries), game.strategy_counts)


def lift_back(profile: MixedProfile, mapping: SymmetrizationMap) -> MixedProfile:
    """Move the mass of every added rung onto the strategy that dominates it."""
    rows = []
    for row, erow, n in zip(profile.rows, mapping.entries, mapping.original_counts):
        out = [ZERO] * n
        for x, e in zip(row, erow):
            out[e.target] += x
        rows.append(tuple(out))
    return MixedProfile(tuple(rows))


@dataclass(frozen=True)
class PolymatrixGame:
    """Players on a complete graph plus a one-strategy "nature" vertex.

    ``edges[(i, k)][j][l]`` is the ``(payoff_i, payoff_k)`` pair when ``i``
    plays ``j`` and ``k`` plays ``l`` (``i < k``).  ``nature[i][j]`` is the
    ``(payoff_i, payoff_nature)`` pair of player ``i``'s edge to nature.
    """

    strategy_counts: tuple[int, ...]
    edges: dict
    nature: tuple[tuple[tuple[Fraction, Fraction], ...], ...]

    def edge_payoff(self, i: int, k: int, j: int, l: int) -> Fraction:
        """Payoff to ``i`` on edge ``(i, k)`` when they play ``j`` and ``l``."""
        if i < k:
            return self.edges[(i, k)][j][l][0]
        return self.edges[(k, i)][l][j][1]

    def payoffs(self, choices: Sequence[int]) -> tuple[Fraction, ...]:
        d = len(self.strategy_counts)
        out = []
        for i in range(d):
            total = self.nature[i][choices[i]][0]
            for k in range(d):
                if k != i:
                    total += self.edge_payoff(i, k, choices[i], choices[k])
            out.append(total)
        return tuple(out)

    def nature_payoff(self, choices: Sequence[int]) -> Fraction:
        return sum((self.nature[i][j][1] for i, j in enumerate(choices)), ZERO)

    def is_constant_sum(self) -> bool:
        """True when every edge (nature edges included) has a constant pair sum."""
        tables = [[pair for row in t for pair in row] for t in self.edges.values()]
        tables += [list(row) for row in self.nature]
        return all(len({x + y for x, y in t}) == 1 for t in tables)


def linear_prize_params(game) -> tuple[Fraction, Fraction] | None:
    """``(a, b)`` with ``u_k = a - k b`` for every rank, or ``None``."""
    u = game.prize_vector()
    if len(u) == 1:
        return None
    b = u[0] - u[1]
    a = u[0] + b
    if all(u[k] == a - (k + 1) * b for k in range(len(u))):
        return a, b
    return None


def build_polymatrix(game: RankingGame, a: Fraction, b: Fraction) -> PolymatrixGame:
    """Edge decomposition of a tie-free game whose prize for rank k is ``a - k b``.

    Every pairwise edge fines the lower-ranked of the two players ``b``;
    the nature edge pays ``a - b`` minus the player's own cost.
    """
    if game.has_ties():
        raise ValueError("polymatrix form requires distinct scores")
    a, b = parse_rat(a), parse_rat(b)
    u = game.prize_vector()
    if any(u[k] != a - (k + 1) * b for k in range(len(u))):
        raise ValueError("prizes are not a - k*b for the given a, b")
    d = game.num_players
    edges = {}
    for i in range(d):
        for k in range(i + 1, d):
            si, sk = game.scores(i), game.scores(k)
            edges[(i, k)] = tuple(
                tuple((ZERO, -b) if x > y else (-b, ZERO) for y in sk) for x in si
            )
    nature = tuple(tuple((a - b - c, c - a + b) for c in game.costs(i)) for i in range(d))
    return PolymatrixGame(game.strategy_counts, edges, nature)
