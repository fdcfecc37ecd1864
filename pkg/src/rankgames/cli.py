"""Command-line front end.

Exit codes: 0 success, 1 certified ε above the requested ε (or no
equilibrium on the given support), 2 malformed input, 3 method does not fit
the game.
"""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path

from rankgames.approx import SearchExhausted, fptas_solve, ptas_solve
from rankgames.exact import (
    TiesPresent,
    cascade_solve,
    solve_linear_prize,
    solve_pure_two_action,
    solve_two_player_no_ties,
)
from rankgames.game import MixedProfile, RankingGame, normalize, validate
from rankgames.generate import GeneratorSpec, generate
from rankgames.io import (
    FormatError,
    dumps,
    game_to_dict,
    profile_from_dict,
    read_game,
    read_json,
    write_json,
)
from rankgames.oracle import brute_force_two_player, grid_search_ne
from rankgames.payoffs import verify
from rankgames.rational import ZERO, parse_rat
from rankgames.reductions import lift_back, linear_prize_params, score_symmetrize

log = logging.getLogger("rankgames")

OK, QUALITY_MISS, MALFORMED, MISMATCH = 0, 1, 2, 3

METHODS = ("auto", "pure2", "two-player-no-ties", "cascade", "linear-prize", "ptas", "fptas", "brute", "grid")
DEFAULT_GRID_STEP = Fraction(1, 10)


class Mismatch(Exception):
    """The chosen method's preconditions do not hold for this game."""


class QualityMiss(Exception):
    """The method ran but produced no usable profile."""


def _rat_arg(text: str) -> Fraction:
    try:
        return parse_rat(text)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _parse_support(text: str, d: int) -> list[list[int]]:
    parts = text.split(";")
    if len(parts) != d:
        raise Mismatch(f"--support lists {len(parts)} players, the game has {d}")
    try:
        return [[int(t) for t in part.split(",") if t.strip()] for part in parts]
    except ValueError as exc:
        raise FormatError(f"bad --support: {exc}") from exc


def _load_game(path) -> RankingGame:
    game = read_game(path)
    problems = [p for p in validate(game) if not p.startswith("prize count")]
    if problems:
        raise FormatError("; ".join(problems))
    return game


def _emit(data: dict, output) -> None:
    if output:
        write_json(output, data)
    else:
        sys.stdout.write(dumps(data))


# --------------------------------------------------------------------------
# solve


def _approx_eps(args, scale: Fraction) -> Fraction:
    if args.epsilon is None or args.epsilon <= 0:
        raise Mismatch("approximate methods need a positive --epsilon")
    return args.epsilon / scale


def _via_symmetrization(norm, record, solver):
    sym, mapping = score_symmetrize(norm)
    return record.lift_profile(lift_back(solver(sym), mapping))


def _route(game: RankingGame, norm: RankingGame) -> str:
    d = game.num_players
    if d == 2 and not game.has_ties():
        return "two-player-no-ties"
    if norm.is_score_symmetric() and all(n == 2 for n in norm.strategy_counts):
        return "pure2"
    if not game.has_ties() and linear_prize_params(norm) is not None:
        return "linear-prize"
    return "fptas" if d <= 2 else "ptas"


def _solve(game: RankingGame, method: str, args) -> MixedProfile:
    norm, record = normalize(game)
    if method == "auto":
        method = _route(game, norm)
        log.info("auto routed to %s", method)
    d = game.num_players
    if method == "two-player-no-ties":
        if d != 2:
            raise Mismatch("two-player-no-ties needs exactly two players")
        return solve_two_player_no_ties(game)
    if method == "pure2":
        if not (norm.is_score_symmetric() and all(n == 2 for n in norm.strategy_counts)):
            raise Mismatch("pure2 needs a shared two-score ladder")
        return record.lift_profile(solve_pure_two_action(norm.to_score_symmetric()))
    if method == "cascade":
        if args.support is None:
            raise Mismatch("cascade needs --support")
        if any(u != 0 for u in norm.prize_vector()[1:]):
            raise Mismatch("cascade needs a single prize")
        support = _parse_support(args.support, d)
        try:
            reduced = [record.reduce_indices(i, s) for i, s in enumerate(support)]
            prof = cascade_solve(norm, reduced)
        except TiesPresent:
            raise
        except ValueError as exc:
            raise Mismatch(str(exc)) from exc
        if prof is None:
            raise QualityMiss("the given support carries no equilibrium")
        return record.lift_profile(prof)
    if method == "linear-prize":
        if linear_prize_params(norm) is None:
            raise Mismatch("prizes are not affine in rank")
        return solve_linear_prize(game)
    if method == "ptas":
        eps = _approx_eps(args, record.scale)
        return _via_symmetrization(norm, record, lambda g: ptas_solve(g, eps))
    if method == "fptas":
        eps = _approx_eps(args, record.scale)
        delta = args.delta_override
        return _via_symmetrization(norm, record, lambda g: fptas_solve(g, eps, delta_override=delta))
    if method == "brute":
        if d != 2:
            raise Mismatch("brute force handles two players only")
        found = brute_force_two_player(game, limit=1)
        if not found:
            raise QualityMiss("no equilibrium found")
        return found[0]
    if method == "grid":
        step = args.delta_override or DEFAULT_GRID_STEP
        return grid_search_ne(game, step).profile
    raise Mismatch(f"unknown method {method!r}")


def cmd_solve(args) -> int:
    game = _load_game(args.game)
    if args.threads < 1:
        raise FormatError("--threads must be positive")
    profile = _solve(game, args.method, args)
    cert = verify(game, profile)
    data = cert.to_dict()
    data["method"] = args.method
    _emit(data, args.output)
    requested = args.epsilon if args.epsilon is not None else ZERO
    return OK if cert.epsilon <= requested else QUALITY_MISS


# --------------------------------------------------------------------------
# other commands


def cmd_verify(args) -> int:
    game = _load_game(args.game)
    profile = profile_from_dict(read_json(args.profile))
    if not profile.matches(game.strategy_counts):
        raise Mismatch("profile dimensions do not match the game")
    cert = verify(game, profile)
    _emit(cert.to_dict(), args.output)
    return OK if cert.epsilon <= args.epsilon else QUALITY_MISS


def cmd_gen(args) -> int:
    tie_policy = "forbid" if args.no_ties else args.tie_policy
    if args.no_ties and args.tie_policy not in (None, "forbid"):
        raise FormatError("--no-ties contradicts --tie-policy " + args.tie_policy)
    spec = GeneratorSpec(
        players=args.players,
        actions=args.actions,
        seed=args.seed,
        tie_policy=tie_policy or "forbid",
        prize_model=args.prize_model,
        max_denominator=args.max_denominator,
    )
    problems = spec.problems()
    if problems:
        raise FormatError("; ".join(problems))
    _emit(game_to_dict(generate(spec)), args.output)
    return OK


def cmd_normalize(args) -> int:
    game = _load_game(args.game)
    norm, _ = normalize(game)
    _emit(game_to_dict(norm), args.output)
    return OK


def cmd_reduce(args) -> int:
    game = _load_game(args.game)
    norm, _ = normalize(game)
    sym, mapping = score_symmetrize(norm)
    _emit(game_to_dict(sym), args.output)
    map_path = args.map or (f"{args.output}.map.json" if args.output else None)
    if map_path:
        write_json(map_path, mapping.to_dict())
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rankgames", description="Equilibria of competitiveness-based ranking games.")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="compute and certify an equilibrium")
    p.add_argument("game", type=Path)
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--epsilon", type=_rat_arg, default=None, help="requested ε (original payoff units)")
    p.add_argument("--delta-override", type=_rat_arg, default=None, help="FPTAS grid step, or grid-search step")
    p.add_argument("--support", default=None, help='cascade support, e.g. "0,1;1;0"')
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="certify a profile")
    p.add_argument("game", type=Path)
    p.add_argument("profile", type=Path)
    p.add_argument("--epsilon", type=_rat_arg, default=ZERO)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate a random game")
    p.add_argument("--players", type=int, required=True)
    p.add_argument("--actions", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tie-policy", choices=("forbid", "allow", "force-shared-ladder"), default=None)
    p.add_argument("--no-ties", action="store_true", help="same as --tie-policy forbid")
    p.add_argument("--prize-model", choices=("single", "linear", "random"), default="single")
    p.add_argument("--max-denominator", type=int, default=20)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("normalize", help="write the normalized game")
    p.add_argument("game", type=Path)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("reduce", help="structural reductions")
    p.add_argument("kind", choices=("score-symmetric",))
    p.add_argument("game", type=Path)
    p.add_argument("--output", "-o", default=None)
    p.add_argument("--map", default=None, help="where to write the symmetrization map")
    p.set_defaults(func=cmd_reduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return MALFORMED if exc.code else OK
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (Mismatch, TiesPresent) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return MISMATCH
    except QualityMiss as exc:
        print(f"error: {exc}", file=sys.stderr)
        return QUALITY_MISS
    except (FormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return MALFORMED
    except SearchExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return QUALITY_MISS


if __name__ == "__main__":
    sys.exit(main())
