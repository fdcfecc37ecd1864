"""Brute-force references: support enumeration, symmetric binary mixing, grid search.

These are deliberately simple and share no search logic with the solvers
they are used to check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from rankgames.game import MixedProfile, RankingGame, ScoreSymmetricGame
from rankgames.lp import LinearProgram, LinearSystem, solve_lp, solve_system
from rankgames.payoffs import payoff_row, pure_payoffs, verify
from rankgames.rational import ONE, ZERO, parse_rat

DEFAULT_TOLERANCE = Fraction(1, 10**9)


def _subsets(items) -> list[tuple[int, ...]]:
    """Non-empty subsets, smallest first."""
    items = list(items)
    return [c for k in range(1, len(items) + 1) for c in itertools.combinations(items, k)]


def _bimatrix(game: RankingGame):
    n0, n1 = game.strategy_counts
    a = [[ZERO] * n1 for _ in range(n0)]
    b = [[ZERO] * n1 for _ in range(n0)]
    for j in range(n0):
        for l in range(n1):
            a[j][l], b[j][l] = pure_payoffs(game, (j, l))
    return a, b


def _is_equilibrium(a, b, x, y) -> bool:
    """Every supported strategy earns the best pure payoff."""
    n0, n1 = len(x), len(y)
    r0 = [sum((a[j][l] * y[l] for l in range(n1)), ZERO) for j in range(n0)]
    r1 = [sum((b[j][l] * x[j] for j in range(n0)), ZERO) for l in range(n1)]
    best0, best1 = max(r0), max(r1)
    return all(r0[j] == best0 for j in range(n0) if x[j] > 0) and all(
        r1[l] == best1 for l in range(n1) if y[l] > 0
    )


def _support_pair(a, b, s0, s1):
    """One equilibrium with supports inside (s0, s1), or ``None``.

    Unknowns are ``x[s0], y[s1], v0, v1``.
    """
    n0, n1 = len(a), len(a[0])
    k0, k1 = len(s0), len(s1)
    nv = k0 + k1 + 2
    rows, rhs = [], []
    for j in s0:  # player 0 indifferent over s0
        row = [ZERO] * nv
        for t, l in enumerate(s1):
            row[k0 + t] = a[j][l]
        row[nv - 2] = Fraction(-1)
        rows.append(row)
        rhs.append(ZERO)
    for l in s1:
        row = [ZERO] * nv
        for t, j in enumerate(s0):
            row[t] = b[j][l]
        row[nv - 1] = Fraction(-1)
        rows.append(row)
        rhs.append(ZERO)
    rows.append([ONE] * k0 + [ZERO] * (k1 + 2))
    rows.append([ZERO] * k0 + [ONE] * k1 + [ZERO, ZERO])
    rhs += [ONE, ONE]

    sol = solve_system(LinearSystem(rows, rhs))
    if sol.status == "none":
        return None
    if sol.status == "unique":
        z = sol.x
    else:
        rel = ["="] * len(rows)
        lp_rows, lp_rhs = list(rows), list(rhs)
        for j in range(n0):
            if j not in s0:
                row = [ZERO] * nv
                for t, l in enumerate(s1):
                    row[k0 + t] = a[j][l]
                row[nv - 2] = Fraction(-1)
                lp_rows.append(row)
                rel.append("<=")
                lp_rhs.append(ZERO)
        for l in range(n1):
            if l not in s1:
                row = [ZERO] * nv
                for t, j in enumerate(s0):
                    row[t] = b[j][l]
                row[nv - 1] = Fraction(-1)
                lp_rows.append(row)
                rel.append("<=")
                lp_rhs.append(ZERO)
        bounds = [(ZERO, None)] * (k0 + k1) + [(None, None)] * 2
        res = solve_lp(LinearProgram([ZERO] * nv, lp_rows, rel, lp_rhs, bounds=bounds))
        if res.status != "optimal":
            return None
        z = res.x
    if any(v < 0 for v in z[: k0 + k1]):
        return None
    x = [ZERO] * n0
    y = [ZERO] * n1
    for t, j in enumerate(s0):
        x[j] = z[t]
    for t, l in enumerate(s1):
        y[l] = z[k0 + t]
    if not _is_equilibrium(a, b, x, y):
        return None
    return MixedProfile((tuple(x), tuple(y)))


def brute_force_two_player(game: RankingGame, limit: int | None = None) -> list[MixedProfile]:
    """Equilibria found by trying every pair of supports (ties allowed).

    Each support pair contributes its unique solution or, when the
    indifference system is underdetermined, one vertex of the solution set.
    Results are deduplicated and ordered by total support size.
    """
    if game.num_players != 2:
        raise ValueError("exactly two players required")
    a, b = _bimatrix(game)
    n0, n1 = game.strategy_counts
    pairs = sorted(
        itertools.product(_subsets(range(n0)), _subsets(range(n1))),
        key=lambda p: (len(p[0]) + len(p[1]), p[0], p[1]),
    )
    found: list[MixedProfile] = []
    seen = set()
    for s0, s1 in pairs:
        prof = _support_pair(a, b, s0, s1)
        if prof is None or prof.rows in seen:
            continue
        seen.add(prof.rows)
        found.append(prof)
        if limit is not None and len(found) >= limit:
            break
    return found


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SymmetricMix:
    """``p`` is the probability of the stronger action; ``status`` is
    ``"interior"``, ``"degenerate"`` (every p is indifferent) or ``"boundary"``
    (no interior root; everybody plays the cheap action)."""

    p: Fraction
    gap: Fraction
    status: str
    iterations: int = 0


def binary_symmetric_game(d: int, c: Fraction) -> ScoreSymmetricGame:
    return ScoreSymmetricGame((ONE, Fraction(2)), ((ZERO, c),) * d, (ONE,) + (ZERO,) * (d - 1))


def indifference_gap(d: int, c: Fraction, p: Fraction) -> Fraction:
    """E(strong action) minus E(cheap action) when every opponent picks strong w.p. ``p``."""
    game = binary_symmetric_game(d, c)
    profile = MixedProfile(((ONE - p, p),) * d)
    row = payoff_row(game, profile, 0, "anonymous")
    return row[1] - row[0]


def symmetric_binary_mixed(d: int, c, tol: Fraction = DEFAULT_TOLERANCE, max_iter: int = 200) -> SymmetricMix:
    """Symmetric mixed equilibrium of the single-prize two-action game by bisection.

    Arithmetic is exact; only the stopping rule ``|gap| <= tol`` is approximate.
    """
    c = parse_rat(c)
    tol = parse_rat(tol)
    if d < 2:
        raise ValueError("at least two players required")
    if not Fraction(1, d) <= c < 1:
        raise ValueError(f"cost must lie in [1/{d}, 1)")
    lo, hi = ZERO, ONE
    g_lo = indifference_gap(d, c, lo)
    # the gap is a polynomial of degree < d in p, so d zeros make it vanish identically
    if all(indifference_gap(d, c, Fraction(k, d)) == 0 for k in range(d + 1)):
        return SymmetricMix(Fraction(1, 2), ZERO, "degenerate")
    if g_lo <= 0:
        return SymmetricMix(ZERO, g_lo, "boundary")
    it = 0
    mid, g_mid = lo, g_lo
    while it < max_iter:
        it += 1
        mid = (lo + hi) / 2
        g_mid = indifference_gap(d, c, mid)
        if g_mid == 0 or (abs(g_mid) <= tol and hi - lo <= tol):
            break
        if g_mid > 0:
            lo = mid
        else:
            hi = mid
    return SymmetricMix(mid, g_mid, "interior", it)


# --------------------------------------------------------------------------


def _grid_rows(n: int, m: int) -> Iterator[tuple[Fraction, ...]]:
    for cut in itertools.combinations(range(m + n - 1), n - 1):
        parts, prev = [], -1
        for c in cut + (m + n - 1,):
            parts.append(Fraction(c - prev - 1, m))
            prev = c
        yield tuple(parts)


@dataclass(frozen=True)
class GridResult:
    profile: MixedProfile
    epsilon: Fraction
    examined: int
    target: Fraction | None = None

    @property
    def meets_target(self) -> bool:
        return self.target is None or self.epsilon <= self.target


def grid_search_ne(game, delta, eps=None) -> GridResult:
    """Minimum-ε profile among all profiles with entries in multiples of ``delta``.

    Ties go to the lexicographically smallest profile.  ``eps`` is only
    recorded as a target on the result.
    """
    delta = parse_rat(delta)
    if delta <= 0 or delta.numerator != 1:
        raise ValueError("delta must be the inverse of a positive integer")
    m = delta.denominator
    counts = game.strategy_counts
    grids = [sorted(_grid_rows(n, m)) for n in counts]
    best = None
    examined = 0
    for rows in itertools.product(*grids):
        examined += 1
        e = verify(game, MixedProfile(rows)).epsilon
        key = (e, rows)
        if best is None or key < best:
            best = key
    target = None if eps is None else parse_rat(eps)
    return GridResult(MixedProfile(best[1]), best[0], examined, target)


def cascade_supports(game: RankingGame) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Every support tuple over strategies costing less than 1, smallest first."""
    per_player = []
    for i in range(game.num_players):
        cheap = [j for j, c in enumerate(game.costs(i)) if c < 1]
        per_player.append(_subsets(cheap))
    combos = itertools.product(*per_player)
    yield from sorted(combos, key=lambda s: (sum(map(len, s)), s))

