"""Approximation schemes for score-symmetric games.

``ptas_solve`` searches count-vectors of grid strategies per cost type and
suits many players with few strategies.  ``fptas_solve`` runs a block-by-block
dynamic program over partial sums and running best payoffs and suits few
players with many strategies.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from rankgames.game import MixedProfile, ScoreSymmetricGame
from rankgames.payoffs import TieCountDistribution, _prefix, _symmetric_payoff_row
from rankgames.rational import ONE, ZERO, floor_to_grid, inverse_integer_floor

log = logging.getLogger(__name__)


class SearchExhausted(RuntimeError):
    """No candidate survived; contradicts the existence argument unless δ was overridden."""


def _require_inverse_integer(eps: Fraction) -> int:
    eps = Fraction(eps)
    if eps <= 0 or eps.numerator != 1:
        raise ValueError(f"{eps} is not the inverse of a positive integer")
    return eps.denominator


def epsilon_round(x: Sequence[Fraction], eps: Fraction) -> tuple[Fraction, ...]:
    """Round a probability vector onto the ε-grid keeping every prefix sum within ε."""
    m = _require_inverse_integer(eps)
    if sum(x, ZERO) != 1:
        raise ValueError("input is not a probability vector")
    eps = Fraction(1, m)
    out = []
    true_sum = rounded_sum = ZERO
    for v in x:
        v = Fraction(v)
        if (v * m).denominator == 1:
            r = v
        elif rounded_sum <= true_sum:
            r = Fraction(math.ceil(v * m), m)
        else:
            r = Fraction(math.floor(v * m), m)
        out.append(r)
        true_sum += v
        rounded_sum += r
    return tuple(out)


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Non-negative integer vectors of length ``parts`` summing to ``total``.

    Reverse lexicographic order, so ``(total, 0, ..., 0)`` comes first.
    """
    a = [total] + [0] * (parts - 1)
    while True:
        yield tuple(a)
        i = next((k for k in range(parts - 2, -1, -1) if a[k] > 0), None)
        if i is None:
            return
        rest = sum(a[i + 1 :])
        a[i] -= 1
        a[i + 1] = rest + 1
        for k in range(i + 2, parts):
            a[k] = 0


def strategy_grid(n: int, m: int) -> list[tuple[Fraction, ...]]:
    """All probability vectors over ``n`` strategies with entries in ``(1/m) Z``."""
    return [tuple(Fraction(c, m) for c in comp) for comp in compositions(m, n)]


def round_costs(game: ScoreSymmetricGame, step: Fraction) -> ScoreSymmetricGame:
    return game.with_costs(tuple(tuple(floor_to_grid(c, step) for c in row) for row in game.costs))


def _ws_regret(row: Sequence[Fraction], payoffs: Sequence[Fraction]) -> Fraction:
    best = max(payoffs)
    return best - min(p for x, p in zip(row, payoffs) if x > 0)


# --------------------------------------------------------------------------
# PTAS


@dataclass(frozen=True)
class PtasSetup:
    eps: Fraction
    rounded: ScoreSymmetricGame
    types: tuple[tuple[int, ...], ...]  # member players per type
    grid: tuple[tuple[Fraction, ...], ...]

    def candidate_count(self) -> int:
        s = len(self.grid)
        return math.prod(math.comb(len(members) + s - 1, s - 1) for members in self.types)


def ptas_setup(game: ScoreSymmetricGame, eps: Fraction) -> PtasSetup:
    eps = inverse_integer_floor(eps)
    m = eps.denominator
    n = game.num_strategies
    rounded = round_costs(game, eps)
    types: dict[tuple[Fraction, ...], list[int]] = {}
    for i, row in enumerate(rounded.costs):
        types.setdefault(row, []).append(i)
    grid = strategy_grid(n, m * n)
    return PtasSetup(eps, rounded, tuple(tuple(v) for v in types.values()), tuple(grid))


def ptas_candidates(setup: PtasSetup) -> Iterator[tuple[MixedProfile, list]]:
    """Every profile fixed by how many players of each type use each grid vector.

    Yields ``(profile, groups)`` where ``groups`` lists ``(representative,
    grid_index)`` for each non-empty (type, grid vector) class.
    """
    d = setup.rounded.num_players
    s = len(setup.grid)
    per_type = [list(compositions(len(members), s)) for members in setup.types]
    for choice in itertools.product(*per_type):
        rows: list = [None] * d
        groups = []
        for members, comp in zip(setup.types, choice):
            pos = 0
            for g, count in enumerate(comp):
                if count:
                    groups.append((members[pos], g))
                for p in members[pos : pos + count]:
                    rows[p] = setup.grid[g]
                pos += count
        yield MixedProfile(tuple(rows)), groups


def ptas_solve(game: ScoreSymmetricGame, eps: Fraction, stats: dict | None = None) -> MixedProfile:
    """First candidate that is an ε-well-supported equilibrium of the cost-rounded game.

    On the original game the result is 2ε-well-supported.
    """
    setup = ptas_setup(game, eps)
    checked = 0
    for profile, groups in ptas_candidates(setup):
        checked += 1
        for rep, _ in groups:
            pay = _symmetric_payoff_row(setup.rounded, profile, rep)
            if _ws_regret(profile.rows[rep], pay) > setup.eps:
                break
        else:
            if stats is not None:
                stats.update(checked=checked, candidates=setup.candidate_count(),
                             types=len(setup.types), grid=len(setup.grid), eps=setup.eps)
            return profile
    raise SearchExhausted("no candidate profile passed the ε check")


# --------------------------------------------------------------------------
# FPTAS


def fptas_delta(eps: Fraction, d: int) -> Fraction:
    """Grid step that makes the rounding argument go through."""
    return inverse_integer_floor(eps) / (4 * d * d * 3**d)


def _levels(total: int) -> list[int]:
    """Coarse-to-fine grid resolutions dividing ``total``, ending at ``total``."""
    divisors = [r for r in range(1, total + 1) if total % r == 0]
    out = []
    for r in divisors:
        if not out or r >= 2 * out[-1]:
            out.append(r)
    if out[-1] != total:
        out.append(total)
    return out


class _BlockModel:
    """Payoff of block ``j`` for each player given everyone's (σ_{j-1}, x_j), in grid units."""

    def __init__(self, game: ScoreSymmetricGame, units: int, eps: Fraction):
        self.game = game
        self.units = units
        self.eps = eps
        self.d = game.num_players
        self.n = game.num_strategies
        self.prize_prefix = _prefix(game.prize_vector())
        self._cache: dict = {}

    def payoff(self, i: int, j: int, prev: Sequence[int], x: Sequence[int]) -> Fraction:
        key = (i, j) + tuple(v for k in range(self.d) if k != i for v in (prev[k], x[k]))
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        u = self.units
        cats = []
        for k in range(self.d):
            if k == i:
                continue
            below = Fraction(prev[k], u)
            tied = Fraction(x[k], u)
            cats.append((ONE - below - tied, tied, below))
        value = TieCountDistribution.fold(cats).expected_share(self.prize_prefix) - self.game.costs[i][j]
        self._cache[key] = value
        return value

    def step(self, j: int, prev: Sequence[int], alpha, x: Sequence[int]):
        """Apply one block; returns the new running maxima or ``None`` if filtered."""
        new_alpha = []
        for i in range(self.d):
            pi = self.payoff(i, j, prev, x)
            if alpha is None:
                new_alpha.append(pi)
                continue
            a = alpha[i]
            if pi > a + self.eps and prev[i] > 0:
                return None
            if pi < a - self.eps and x[i] > 0:
                return None
            new_alpha.append(pi if pi > a else a)
        return tuple(new_alpha)


def _run_level(model: _BlockModel, stride: int, stats: dict):
    units, d, n = model.units, model.d, model.n
    start = (tuple([0] * d), None)
    layers = [{start: None}]
    for j in range(n):
        nxt: dict = {}
        for state in layers[-1]:
            prev, alpha = state
            if j == n - 1:
                choices = [(tuple(units - p for p in prev))]
            else:
                choices = itertools.product(*(range(0, units - p + 1, stride) for p in prev))
            for x in choices:
                new_alpha = model.step(j, prev, alpha, x)
                if new_alpha is None:
                    continue
                key = (tuple(p + v for p, v in zip(prev, x)), new_alpha)
                if key not in nxt:
                    nxt[key] = (state, x)
        stats.setdefault("states", []).append(len(nxt))
        if not nxt:
            return None
        layers.append(nxt)
    final = next(iter(layers[-1]))
    xs = []
    key = final
    for layer in reversed(layers[1:]):
        parent, x = layer[key]
        xs.append(x)
        key = parent
    xs.reverse()
    return tuple(tuple(Fraction(xs[j][i], units) for j in range(n)) for i in range(d))


def fptas_solve(
    game: ScoreSymmetricGame,
    eps: Fraction,
    delta_override: Fraction | None = None,
    stats: dict | None = None,
) -> MixedProfile:
    """Block dynamic program over (σ, α) states with relaxed best-reply filters.

    Costs are rounded down to the δ grid first.  Coarser sub-grids of the
    δ grid are searched before the full one; any surviving path is a path of
    the full program, so the approximation guarantee is unaffected.
    """
    eps = inverse_integer_floor(eps)
    delta = fptas_delta(eps, game.num_players) if delta_override is None else inverse_integer_floor(delta_override)
    units = delta.denominator
    rounded = round_costs(game, delta)
    model = _BlockModel(rounded, units, eps)
    info: dict = {"delta": delta, "eps": eps, "levels": []}
    for resolution in _levels(units):
        level_stats: dict = {"resolution": resolution}
        rows = _run_level(model, units // resolution, level_stats)
        info["levels"].append(level_stats)
        log.debug("fptas level %s: states %s", resolution, level_stats.get("states"))
        if rows is not None:
            if stats is not None:
                stats.update(info)
            return MixedProfile(rows)
    if stats is not None:
        stats.update(info)
    raise SearchExhausted("no surviving state sequence")


def fptas_replay(
    game: ScoreSymmetricGame, eps: Fraction, profile: MixedProfile, delta: Fraction
) -> bool:
    """Whether ``profile`` (entries on the δ grid) survives every block filter."""
    eps = inverse_integer_floor(eps)
    units = _require_inverse_integer(delta)
    model = _BlockModel(round_costs(game, Fraction(1, units)), units, eps)
    d, n = model.d, model.n
    xs = []
    for row in profile.rows:
        scaled = [x * units for x in row]
        if any(v.denominator != 1 for v in scaled):
            raise ValueError("profile is not on the δ grid")
        xs.append([int(v) for v in scaled])
    prev, alpha = tuple([0] * d), None
    for j in range(n):
        x = tuple(xs[i][j] for i in range(d))
        alpha = model.step(j, prev, alpha, x)
        if alpha is None:
            return False
        prev = tuple(p + v for p, v in zip(prev, x))
    return all(p == units for p in prev)
