"""Seeded random ranking games."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from rankgames.game import RankingGame, StrategySpec
from rankgames.rational import ONE, ZERO

TIE_POLICIES = ("forbid", "allow", "force-shared-ladder")
PRIZE_MODELS = ("single", "linear", "random")


@dataclass(frozen=True)
class GeneratorSpec:
    """Recipe for a random game; the same recipe always yields the same game.

    Costs are sorted distinct multiples of ``1/max_denominator`` in [0, 1).
    """

    players: int
    actions: int
    seed: int = 0
    tie_policy: str = "forbid"
    prize_model: str = "single"
    max_denominator: int = 20

    def problems(self) -> list[str]:
        out = []
        if self.players < 2:
            out.append("at least two players are needed for a prize gap")
        if self.actions < 1:
            out.append("at least one action per player")
        if self.tie_policy not in TIE_POLICIES:
            out.append(f"unknown tie policy {self.tie_policy!r}")
        if self.prize_model not in PRIZE_MODELS:
            out.append(f"unknown prize model {self.prize_model!r}")
        if self.max_denominator < self.actions:
            out.append("max denominator must be at least the number of actions")
        return out


def _prizes(spec: GeneratorSpec, rng: random.Random) -> tuple[Fraction, ...]:
    d = spec.players
    if spec.prize_model == "single":
        return (ONE,) + (ZERO,) * (d - 1)
    if spec.prize_model == "linear":
        return tuple(Fraction(d - k, d - 1) for k in range(1, d + 1))
    den = spec.max_denominator
    middle = sorted((Fraction(rng.randint(0, den), den) for _ in range(d - 2)), reverse=True)
    return (ONE, *middle, ZERO)


def _scores(spec: GeneratorSpec, rng: random.Random) -> list[list[int]]:
    d, n = spec.players, spec.actions
    if spec.tie_policy == "force-shared-ladder":
        return [list(range(1, n + 1)) for _ in range(d)]
    if spec.tie_policy == "allow":
        return [sorted(rng.sample(range(1, 2 * n + 1), n)) for _ in range(d)]
    pool = rng.sample(range(1, 3 * d * n + 1), d * n)
    return [sorted(pool[i * n : (i + 1) * n]) for i in range(d)]


def generate(spec: GeneratorSpec) -> RankingGame:
    problems = spec.problems()
    if problems:
        raise ValueError("; ".join(problems))
    rng = random.Random(spec.seed)
    scores = _scores(spec, rng)
    den = spec.max_denominator
    players = []
    for i in range(spec.players):
        costs = sorted(rng.sample(range(den), spec.actions))
        players.append(tuple(StrategySpec(Fraction(c, den), s) for c, s in zip(costs, scores[i])))
    return RankingGame(tuple(players), _prizes(spec, rng))
