"""Exact equilibrium algorithms for the tractable subclasses."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from rankgames.game import MixedProfile, RankingGame, ScoreSymmetricGame, is_normalized, normalize
from rankgames.lp import LinearProgram, LinearSystem, solve_lp, solve_system
from rankgames.payoffs import pure_payoffs, verify
from rankgames.rational import ONE, ZERO
from rankgames.reductions import build_polymatrix, linear_prize_params

log = logging.getLogger(__name__)


class TiesPresent(ValueError):
    """Raised when a method that assumes distinct scores receives ties."""


# --------------------------------------------------------------------------
# two strategies, shared ladder: pure equilibrium by threshold scan


@dataclass(frozen=True)
class ThresholdProfile:
    """Players ``order[:cutoff]`` play the stronger strategy, the rest the weaker."""

    order: tuple[int, ...]
    cutoff: int

    def to_profile(self) -> MixedProfile:
        d = len(self.order)
        choice = [0] * d
        for p in self.order[: self.cutoff]:
            choice[p] = 1
        pure = ((ONE, ZERO), (ZERO, ONE))
        return MixedProfile(tuple(pure[c] for c in choice))


def _gap_keys(costs) -> list[int]:
    """Integer keys ordered like ``c_2 - c_1`` (common denominator, no Fraction arithmetic)."""
    lcm = math.lcm(*{c.denominator for row in costs for c in row})
    return [r[1].numerator * (lcm // r[1].denominator) - r[0].numerator * (lcm // r[0].denominator) for r in costs]


def threshold_scan(game: ScoreSymmetricGame) -> ThresholdProfile:
    """Cheapest-first scan for the first profile where the next player stays put."""
    if game.num_strategies != 2:
        raise ValueError("threshold scan needs exactly two shared strategies")
    d = game.num_players
    keys = _gap_keys(game.costs)
    order = sorted(range(d), key=keys.__getitem__)
    u = game.prize_vector()
    total = sum((x for x in u if x), ZERO)
    above = ZERO  # u_1 + ... + u_i
    i = 0
    while i < d:
        stay = (total - above) / (d - i)
        row = game.costs[order[i]]
        move = (above + u[i]) / (i + 1) - (row[1] - row[0])
        if not move > stay:
            break
        above += u[i]
        i += 1
    return ThresholdProfile(tuple(order), i)


def solve_pure_two_action(game: ScoreSymmetricGame) -> MixedProfile:
    """Pure Nash equilibrium of a two-strategy score-symmetric game."""
    return threshold_scan(game).to_profile()


# --------------------------------------------------------------------------
# two players, no ties


def _beaten(game: RankingGame, player: int, j: int, opp_keep: Sequence[int]) -> frozenset:
    s = game.players[player][j].score
    other = game.players[1 - player]
    return frozenset(l for l in opp_keep if other[l].score < s)


def eliminate_same_wins(game: RankingGame) -> tuple[list[int], list[int]]:
    """Drop any strategy that beats the same opponent strategies as its predecessor."""
    keep = [list(range(n)) for n in game.strategy_counts]
    changed = True
    while changed:
        changed = False
        for p in (0, 1):
            new = [keep[p][0]]
            for j in keep[p][1:]:
                if _beaten(game, p, j, keep[1 - p]) == _beaten(game, p, new[-1], keep[1 - p]):
                    changed = True
                else:
                    new.append(j)
            keep[p] = new
    return keep[0], keep[1]


def candidate_supports(n: int) -> list[tuple[int, ...]]:
    """Prefixes, and prefixes of everything but the weakest strategy."""
    out = [tuple(range(k)) for k in range(1, n + 1)]
    out += [tuple(range(1, k)) for k in range(2, n + 1)]
    return out


def _opponent_mix(mine: list[list[Fraction]], own: Sequence[int], opp: Sequence[int]):
    """Opponent mix on ``opp`` making every strategy in ``own`` a best reply.

    ``mine[j][l]`` is my payoff for ``j`` against ``l``.  Returns the full mix
    or ``None``.
    """
    nopp = len(mine[0])
    k = len(opp)
    # unknowns: y_opp..., v
    rows = [[mine[j][l] for l in opp] + [Fraction(-1)] for j in own]
    rows.append([ONE] * k + [ZERO])
    rhs = [ZERO] * len(own) + [ONE]
    sol = solve_system(LinearSystem(rows, rhs))
    if sol.status == "none":
        return None
    if sol.status == "unique":
        y_part, v = sol.x[:k], sol.x[k]
        if any(t < 0 for t in y_part):
            return None
        y = [ZERO] * nopp
        for l, t in zip(opp, y_part):
            y[l] = t
        if any(sum((mine[j][l] * y[l] for l in opp), ZERO) > v for j in range(len(mine))):
            return None
        return y
    # underdetermined: feasibility LP with the best-reply constraints attached
    others = [j for j in range(len(mine)) if j not in own]
    lp_rows = list(rows)
    rel = ["="] * len(lp_rows)
    rhs_lp = list(rhs)
    for j in others:
        lp_rows.append([mine[j][l] for l in opp] + [Fraction(-1)])
        rel.append("<=")
        rhs_lp.append(ZERO)
    lp = LinearProgram([ZERO] * (k + 1), lp_rows, rel, rhs_lp, bounds=[(ZERO, None)] * k + [(None, None)])
    res = solve_lp(lp)
    if res.status != "optimal":
        return None
    y = [ZERO] * nopp
    for l, t in zip(opp, res.x[:k]):
        y[l] = t
    return y


def solve_two_player_no_ties(game: RankingGame) -> MixedProfile:
    """Exact Nash equilibrium of a tie-free two-player game."""
    if game.num_players != 2:
        raise ValueError("exactly two players required")
    if game.has_ties():
        raise TiesPresent("scores of the two players must all differ")
    norm, record = normalize(game)
    keep0, keep1 = eliminate_same_wins(norm)
    reduced = RankingGame(
        (tuple(norm.players[0][j] for j in keep0), tuple(norm.players[1][j] for j in keep1)),
        norm.prizes,
    )
    n0, n1 = reduced.strategy_counts
    pay = [[pure_payoffs(reduced, (j, l)) for l in range(n1)] for j in range(n0)]
    a = [[pay[j][l][0] for l in range(n1)] for j in range(n0)]
    b = [[pay[j][l][1] for j in range(n0)] for l in range(n1)]
    pairs = [(s0, s1) for s0 in candidate_supports(n0) for s1 in candidate_supports(n1)]
    pairs.sort(key=lambda p: (len(p[0]) + len(p[1]), p[0], p[1]))
    for s0, s1 in pairs:
        y = _opponent_mix(a, s0, s1)
        if y is None:
            continue
        x = _opponent_mix(b, s1, s0)
        if x is None:
            continue
        rows = []
        for mix, keep, n in ((x, keep0, norm.strategy_counts[0]), (y, keep1, norm.strategy_counts[1])):
            full = [ZERO] * n
            for p, j in zip(mix, keep):
                full[j] = p
            rows.append(tuple(full))
        profile = MixedProfile(tuple(rows))
        if verify(norm, profile).epsilon == 0:
            log.debug("equilibrium on supports %s / %s", s0, s1)
            return record.lift_profile(profile)
    raise RuntimeError("no prefix support yields an equilibrium; the game violates the solver's assumptions")


# --------------------------------------------------------------------------
# single prize, no ties, known support


def cascade_solve(game: RankingGame, support: Sequence[Sequence[int]]) -> MixedProfile | None:
    """Probabilities for a given equilibrium support, strongest action first.

    The owner of the strongest supported action earns one minus its cost,
    everyone else earns zero; each successive action's indifference equation
    fixes the probability of the action just above it.  Returns ``None`` when
    the support cannot carry an equilibrium; the result is always certified
    before it is returned.
    """
    if not is_normalized(game):
        raise ValueError("cascade_solve expects a normalized game")
    u = game.prize_vector()
    if any(x != 0 for x in u[1:]):
        raise ValueError("cascade_solve expects a single prize")
    if game.has_ties():
        raise TiesPresent("cascade_solve expects distinct scores")
    d = game.num_players
    if len(support) != d or any(len(s) == 0 for s in support):
        raise ValueError("one non-empty support per player required")
    actions = []
    for i, sup in enumerate(support):
        for j in sorted(set(sup)):
            if not 0 <= j < len(game.players[i]):
                raise ValueError(f"strategy {j} of player {i} does not exist")
            if game.players[i][j].cost >= 1:
                raise ValueError("supported strategies must cost less than 1")
            actions.append((game.players[i][j].score, i, j))
    actions.sort(reverse=True)

    top_owner, top_j = actions[0][1], actions[0][2]
    value = [ZERO] * d
    value[top_owner] = ONE - game.players[top_owner][top_j].cost
    prob: dict[tuple[int, int], Fraction] = {}
    sigma = [ZERO] * d
    for r in range(1, len(actions)):
        _, q, qj = actions[r - 1]
        _, alpha, aj = actions[r]
        if q == alpha:
            log.debug("reject: consecutive supported actions of player %d", q)
            return None
        others = ONE
        for k in range(d):
            if k != alpha and k != q:
                others *= ONE - sigma[k]
        need = value[alpha] + game.players[alpha][aj].cost
        if others == 0:
            # the equation reads 0 = need; when it holds, x is free and q keeps the rest
            if need != 0:
                log.debug("reject: degenerate product at action %s", actions[r])
                return None
            x = ONE - sigma[q]
        else:
            x = ONE - sigma[q] - need / others
        if not 0 <= x <= 1:
            log.debug("reject: probability %s out of range", x)
            return None
        prob[(q, qj)] = x
        sigma[q] += x
    _, w, wj = actions[-1]
    last = ONE - sigma[w]
    if not 0 <= last <= 1:
        return None
    prob[(w, wj)] = last
    sigma[w] += last
    if any(s != 1 for s in sigma):
        log.debug("reject: rows do not close to 1: %s", sigma)
        return None
    rows = []
    for i in range(d):
        row = [ZERO] * len(game.players[i])
        for (k, j), x in prob.items():
            if k == i:
                row[j] = x
        rows.append(tuple(row))
    profile = MixedProfile(tuple(rows))
    if verify(game, profile).epsilon != 0:
        log.debug("reject: support solution is not an equilibrium")
        return None
    return profile


# --------------------------------------------------------------------------
# prizes linear in rank: constant-sum polymatrix game


def polymatrix_lp(poly) -> LinearProgram:
    """Bound-minimisation LP whose optima are equilibria of a constant-sum polymatrix game.

    Variables: every player's mixed strategy, then one payoff bound per
    player and one for nature.
    """
    counts = poly.strategy_counts
    d = len(counts)
    offsets = [0]
    for n in counts:
        offsets.append(offsets[-1] + n)
    nx = offsets[-1]
    nvar = nx + d + 1
    rows, rel, rhs = [], [], []
    for i in range(d):
        for j in range(counts[i]):
            row = [ZERO] * nvar
            for k in range(d):
                if k == i:
                    continue
                for l in range(counts[k]):
                    row[offsets[k] + l] += poly.edge_payoff(i, k, j, l)
            row[nx + i] = Fraction(-1)
            rows.append(row)
            rel.append("<=")
            rhs.append(-poly.nature[i][j][0])
    row = [ZERO] * nvar
    for i in range(d):
        for j in range(counts[i]):
            row[offsets[i] + j] = poly.nature[i][j][1]
    row[nx + d] = Fraction(-1)
    rows.append(row)
    rel.append("<=")
    rhs.append(ZERO)
    for i in range(d):
        row = [ZERO] * nvar
        for j in range(counts[i]):
            row[offsets[i] + j] = ONE
        rows.append(row)
        rel.append("=")
        rhs.append(ONE)
    objective = [ZERO] * nx + [ONE] * (d + 1)
    bounds = [(ZERO, None)] * nx + [(None, None)] * (d + 1)
    return LinearProgram(objective, rows, rel, rhs, bounds=bounds)


def solve_linear_prize(game: RankingGame) -> MixedProfile:
    """Exact equilibrium of a tie-free game with prizes affine in rank."""
    if game.has_ties():
        raise TiesPresent("linear-prize solver expects distinct scores")
    norm, record = normalize(game)
    params = linear_prize_params(norm)
    if params is None:
        raise ValueError("prizes are not affine in rank")
    poly = build_polymatrix(norm, *params)
    res = solve_lp(polymatrix_lp(poly))
    if res.status != "optimal":
        raise RuntimeError(f"polymatrix LP reported {res.status}")
    rows, pos = [], 0
    for n in norm.strategy_counts:
        rows.append(tuple(res.x[pos : pos + n]))
        pos += n
    return record.lift_profile(MixedProfile(tuple(rows)))
