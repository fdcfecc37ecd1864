"""Game representations, validation and payoff-preserving preprocessing."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from rankgames.rational import ONE, ZERO, parse_rat


@dataclass(frozen=True)
class StrategySpec:
    cost: Fraction
    score: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "cost", parse_rat(self.cost))
        object.__setattr__(self, "score", parse_rat(self.score))


def _as_strategy(item) -> StrategySpec:
    if isinstance(item, StrategySpec):
        return item
    cost, score = item
    return StrategySpec(cost, score)


@dataclass(frozen=True)
class RankingGame:
    """Per-player strategy lists plus a prize vector ``u_1 >= ... >= u_k``.

    The constructor only checks shape; use :func:`validate` for the
    monotonicity and prize-ordering invariants.
    """

    players: tuple[tuple[StrategySpec, ...], ...]
    prizes: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        players = tuple(tuple(_as_strategy(s) for s in row) for row in self.players)
        if not players:
            raise ValueError("a game needs at least one player")
        if any(len(row) == 0 for row in players):
            raise ValueError("every player needs at least one strategy")
        prizes = tuple(parse_rat(u) for u in self.prizes)
        if not prizes:
            raise ValueError("a game needs at least one prize")
        object.__setattr__(self, "players", players)
        object.__setattr__(self, "prizes", prizes)

    @classmethod
    def from_lists(cls, costs: Sequence[Sequence], scores: Sequence[Sequence], prizes: Sequence) -> "RankingGame":
        if len(costs) != len(scores):
            raise ValueError("costs and scores must list the same players")
        players = []
        for crow, srow in zip(costs, scores):
            if len(crow) != len(srow):
                raise ValueError("cost and score rows differ in length")
            players.append(tuple(StrategySpec(c, s) for c, s in zip(crow, srow)))
        return cls(tuple(players), tuple(prizes))

    @property
    def num_players(self) -> int:
        return len(self.players)

    @property
    def strategy_counts(self) -> tuple[int, ...]:
        return tuple(len(row) for row in self.players)

    def costs(self, i: int) -> tuple[Fraction, ...]:
        return tuple(s.cost for s in self.players[i])

    def scores(self, i: int) -> tuple[Fraction, ...]:
        return tuple(s.score for s in self.players[i])

    def prize_vector(self) -> tuple[Fraction, ...]:
        """Prizes truncated or zero-padded to exactly one per player."""
        return _fit_prizes(self.prizes, self.num_players)

    def is_score_symmetric(self) -> bool:
        first = self.scores(0)
        return all(self.scores(i) == first for i in range(1, self.num_players))

    def has_ties(self) -> bool:
        """True when two different players own strategies of equal score."""
        owner: dict[Fraction, int] = {}
        for i, row in enumerate(self.players):
            for s in row:
                j = owner.setdefault(s.score, i)
                if j != i:
                    return True
        return False

    def to_score_symmetric(self) -> "ScoreSymmetricGame":
        if not self.is_score_symmetric():
            raise ValueError("players do not share one score ladder")
        return ScoreSymmetricGame(
            self.scores(0),
            tuple(self.costs(i) for i in range(self.num_players)),
            self.prizes,
        )


@dataclass(frozen=True)
class ScoreSymmetricGame:
    """Shared score ladder ``s_1 < ... < s_n`` with per-player cost rows."""

    scores: tuple[Fraction, ...]
    costs: tuple[tuple[Fraction, ...], ...]
    prizes: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        scores = tuple(parse_rat(s) for s in self.scores)
        costs = tuple(tuple(parse_rat(c) for c in row) for row in self.costs)
        prizes = tuple(parse_rat(u) for u in self.prizes)
        if not scores:
            raise ValueError("empty score ladder")
        if not costs:
            raise ValueError("a game needs at least one player")
        if any(len(row) != len(scores) for row in costs):
            raise ValueError("every cost row must match the score ladder length")
        if not prizes:
            raise ValueError("a game needs at least one prize")
        object.__setattr__(self, "scores", scores)
        object.__setattr__(self, "costs", costs)
        object.__setattr__(self, "prizes", prizes)

    @property
    def num_players(self) -> int:
        return len(self.costs)

    @property
    def num_strategies(self) -> int:
        return len(self.scores)

    @property
    def strategy_counts(self) -> tuple[int, ...]:
        return (len(self.scores),) * len(self.costs)

    def prize_vector(self) -> tuple[Fraction, ...]:
        return _fit_prizes(self.prizes, self.num_players)

    def to_ranking_game(self) -> RankingGame:
        return RankingGame(
            tuple(tuple(StrategySpec(c, s) for c, s in zip(row, self.scores)) for row in self.costs),
            self.prizes,
        )

    def with_costs(self, costs) -> "ScoreSymmetricGame":
        return ScoreSymmetricGame(self.scores, tuple(tuple(r) for r in costs), self.prizes)


@dataclass(frozen=True)
class MixedProfile:
    """One probability vector per player; entries are exact and rows sum to 1."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(x if type(x) is Fraction else parse_rat(x) for x in row) for row in self.rows)
        for i, row in enumerate(rows):
            if not row:
                raise ValueError(f"row {i} is empty")
            if any(x < 0 for x in row):
                raise ValueError(f"row {i} has a negative probability")
            if sum(row, ZERO) != 1:
                raise ValueError(f"row {i} sums to {sum(row, ZERO)}, not 1")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def pure(cls, choices: Sequence[int], counts: Sequence[int]) -> "MixedProfile":
        rows = []
        for j, n in zip(choices, counts):
            row = [ZERO] * n
            row[j] = ONE
            rows.append(tuple(row))
        return cls(tuple(rows))

    @classmethod
    def uniform(cls, counts: Sequence[int]) -> "MixedProfile":
        return cls(tuple((Fraction(1, n),) * n for n in counts))

    @property
    def num_players(self) -> int:
        return len(self.rows)

    def support(self, i: int) -> tuple[int, ...]:
        return tuple(j for j, x in enumerate(self.rows[i]) if x > 0)

    def pure_choices(self) -> tuple[int, ...] | None:
        """Strategy indices if every row is degenerate, else ``None``."""
        out = []
        for row in self.rows:
            sup = [j for j, x in enumerate(row) if x > 0]
            if len(sup) != 1:
                return None
            out.append(sup[0])
        return tuple(out)

    def matches(self, counts: Sequence[int]) -> bool:
        return len(self.rows) == len(counts) and all(len(r) == n for r, n in zip(self.rows, counts))


def _fit_prizes(prizes: Sequence[Fraction], d: int) -> tuple[Fraction, ...]:
    if len(prizes) >= d:
        return tuple(prizes[:d])
    return tuple(prizes) + (ZERO,) * (d - len(prizes))


def _as_ranking(game) -> RankingGame:
    if isinstance(game, ScoreSymmetricGame):
        return game.to_ranking_game()
    return game


def validate(game) -> list[str]:
    """List every violated invariant; an empty list means the game is valid."""
    game = _as_ranking(game)
    problems: list[str] = []
    for i, row in enumerate(game.players):
        for j in range(len(row) - 1):
            if not row[j].cost < row[j + 1].cost:
                problems.append(f"player {i}: strict cost monotonicity fails at strategies {j},{j + 1}")
            if not row[j].score < row[j + 1].score:
                problems.append(f"player {i}: strict score monotonicity fails at strategies {j},{j + 1}")
    d = game.num_players
    if len(game.prizes) != d:
        problems.append(f"prize count {len(game.prizes)} != number of players {d}")
    u = game.prize_vector()
    for k in range(len(u) - 1):
        if u[k] < u[k + 1]:
            problems.append(f"prizes must be non-increasing: u_{k + 1} < u_{k + 2}")
    if not u[0] > u[-1]:
        problems.append("u_1 > u_d required")
    return problems


@dataclass(frozen=True)
class NormalizationRecord:
    """Affine maps and deletions applied by :func:`normalize`.

    Original payoff of player ``i`` = ``scale * normalized + prize_shift - cost_shift[i]``.
    """

    prize_shift: Fraction
    scale: Fraction
    cost_shifts: tuple[Fraction, ...]
    kept: tuple[tuple[int, ...], ...]
    original_counts: tuple[int, ...]
    discarded_prizes: tuple[Fraction, ...] = ()
    padded_prizes: int = 0

    @property
    def removed(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(j for j in range(n) if j not in set(keep))
            for keep, n in zip(self.kept, self.original_counts)
        )

    def payoff_to_original(self, player: int, value: Fraction) -> Fraction:
        return self.scale * value + self.prize_shift - self.cost_shifts[player]

    def lift_profile(self, profile: MixedProfile) -> MixedProfile:
        """Map a profile of the normalized game to original strategy indices."""
        rows = []
        for row, keep, n in zip(profile.rows, self.kept, self.original_counts):
            full = [ZERO] * n
            for x, j in zip(row, keep):
                full[j] = x
            rows.append(tuple(full))
        return MixedProfile(tuple(rows))

    def reduce_profile(self, profile: MixedProfile) -> MixedProfile:
        """Map an original-index profile onto the normalized game."""
        rows = []
        for i, (row, keep) in enumerate(zip(profile.rows, self.kept)):
            if sum((row[j] for j in keep), ZERO) != 1:
                raise ValueError(f"player {i} puts mass on a removed strategy")
            rows.append(tuple(row[j] for j in keep))
        return MixedProfile(tuple(rows))

    def reduce_indices(self, player: int, indices: Iterable[int]) -> tuple[int, ...]:
        pos = {j: k for k, j in enumerate(self.kept[player])}
        out = []
        for j in indices:
            if j not in pos:
                raise ValueError(f"strategy {j} of player {player} was removed by normalization")
            out.append(pos[j])
        return tuple(out)


def is_normalized(game) -> bool:
    u = game.prize_vector()
    if u[0] != 1 or u[-1] != 0 or len(game.prizes) != len(u):
        return False
    if isinstance(game, ScoreSymmetricGame):
        rows = game.costs
    else:
        rows = [game.costs(i) for i in range(game.num_players)]
    return all(row[0] == 0 and all(0 <= c <= 1 for c in row) for row in rows)


def normalize(game):
    """Shift and scale so that ``u_d = 0``, ``u_1 = 1`` and every ``c_1 = 0``.

    Strategies whose normalized cost exceeds 1 are dropped from a
    :class:`RankingGame` (they are dominated by the cheapest strategy).  A
    :class:`ScoreSymmetricGame` keeps them so the shared ladder survives.
    Returns ``(normalized_game, record)``.
    """
    if isinstance(game, ScoreSymmetricGame):
        return _normalize_symmetric(game)
    problems = [p for p in validate(game) if not p.startswith("prize count")]
    if problems:
        if problems == ["u_1 > u_d required"]:
            raise ValueError("cannot normalize: u_1 == u_d, scaling is undefined")
        raise ValueError("cannot normalize an invalid game: " + "; ".join(problems))
    d = game.num_players
    u = game.prize_vector()
    shift, scale = u[-1], u[0] - u[-1]
    prizes = tuple((x - shift) / scale for x in u)
    players, kept, cost_shifts = [], [], []
    for row in game.players:
        c0 = row[0].cost
        keep = [j for j, s in enumerate(row) if (s.cost - c0) / scale <= 1]
        players.append(tuple(StrategySpec((row[j].cost - c0) / scale, row[j].score) for j in keep))
        kept.append(tuple(keep))
        cost_shifts.append(c0)
    record = NormalizationRecord(
        prize_shift=shift,
        scale=scale,
        cost_shifts=tuple(cost_shifts),
        kept=tuple(kept),
        original_counts=game.strategy_counts,
        discarded_prizes=tuple(game.prizes[d:]),
        padded_prizes=max(0, d - len(game.prizes)),
    )
    return RankingGame(tuple(players), prizes), record


def _normalize_symmetric(game: ScoreSymmetricGame):
    if any(row[k] > row[k + 1] for row in game.costs for k in range(len(row) - 1)):
        raise ValueError("cost rows must be non-decreasing")
    u = game.prize_vector()
    if any(u[k] < u[k + 1] for k in range(len(u) - 1)):
        raise ValueError("prizes must be non-increasing")
    if not u[0] > u[-1]:
        raise ValueError("cannot normalize: u_1 == u_d, scaling is undefined")
    shift, scale = u[-1], u[0] - u[-1]
    costs = tuple(tuple((c - row[0]) / scale for c in row) for row in game.costs)
    record = NormalizationRecord(
        prize_shift=shift,
        scale=scale,
        cost_shifts=tuple(row[0] for row in game.costs),
        kept=tuple(tuple(range(game.num_strategies)) for _ in game.costs),
        original_counts=game.strategy_counts,
        discarded_prizes=tuple(game.prizes[game.num_players:]),
        padded_prizes=max(0, game.num_players - len(game.prizes)),
    )
    return ScoreSymmetricGame(game.scores, costs, tuple((x - shift) / scale for x in u)), record


def pareto_indices(row: Sequence[StrategySpec]) -> list[int]:
    """Indices of the undominated strategies of one player, by ascending score.

    Equal cost keeps the higher score, equal score keeps the cheaper cost and
    exact duplicates keep the lowest index.
    """
    order = sorted(range(len(row)), key=lambda j: (row[j].cost, -row[j].score, j))
    keep: list[int] = []
    best_score = None
    for j in order:
        if best_score is None or row[j].score > best_score:
            keep.append(j)
            best_score = row[j].score
    return keep


def eliminate_degenerate(game: RankingGame) -> RankingGame:
    """Drop dominated duplicates so every player is strictly monotone again."""
    players = tuple(tuple(row[j] for j in pareto_indices(row)) for row in game.players)
    return RankingGame(players, game.prizes)
