"""JSON reading and writing for games, profiles, certificates and symmetrization maps.

Numbers are written as ``"p/q"`` strings.  On input, strings, integers and
decimal literals are accepted; JSON floats are parsed as ``Decimal`` so no
binary rounding sneaks in.
"""

from __future__ import annotations

import json
from decimal import Decimal
from pathlib import Path

from rankgames.game import MixedProfile, RankingGame, StrategySpec
from rankgames.rational import format_rat, parse_rat


class FormatError(ValueError):
    """Input file is not a well-formed document of the expected kind."""


def loads(text: str):
    try:
        return json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc


def _num(value, where: str):
    try:
        return parse_rat(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"{where}: {exc}") from exc


def game_from_dict(data) -> RankingGame:
    if not isinstance(data, dict) or "prizes" not in data or "players" not in data:
        raise FormatError("a game needs 'prizes' and 'players'")
    if not isinstance(data["prizes"], list) or not isinstance(data["players"], list):
        raise FormatError("'prizes' and 'players' must be lists")
    prizes = tuple(_num(u, f"prize {k}") for k, u in enumerate(data["prizes"]))
    players = []
    for i, p in enumerate(data["players"]):
        strategies = p.get("strategies") if isinstance(p, dict) else None
        if not isinstance(strategies, list):
            raise FormatError(f"player {i} needs a 'strategies' list")
        row = []
        for j, s in enumerate(strategies):
            if not isinstance(s, dict) or "cost" not in s or "score" not in s:
                raise FormatError(f"player {i} strategy {j} needs 'cost' and 'score'")
            row.append(StrategySpec(_num(s["cost"], f"cost {i}/{j}"), _num(s["score"], f"score {i}/{j}")))
        players.append(tuple(row))
    try:
        return RankingGame(tuple(players), prizes)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def game_to_dict(game) -> dict:
    if not isinstance(game, RankingGame):
        game = game.to_ranking_game()
    return {
        "prizes": [format_rat(u) for u in game.prizes],
        "players": [
            {"strategies": [{"cost": format_rat(s.cost), "score": format_rat(s.score)} for s in row]}
            for row in game.players
        ],
    }


def profile_from_dict(data) -> MixedProfile:
    rows = data.get("profile") if isinstance(data, dict) else data
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise FormatError("a profile is a list of probability rows")
    parsed = tuple(tuple(_num(x, f"profile row {i}") for x in row) for i, row in enumerate(rows))
    try:
        return MixedProfile(parsed)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def profile_to_dict(profile: MixedProfile) -> dict:
    return {"profile": [[format_rat(x) for x in row] for row in profile.rows]}


def dumps(data) -> str:
    return json.dumps(data, indent=2) + "\n"


def read_json(path) -> object:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    return loads(text)


def read_game(path) -> RankingGame:
    return game_from_dict(read_json(path))


def read_profile(path) -> MixedProfile:
    return profile_from_dict(read_json(path))


def write_json(path, data) -> None:
    Path(path).write_text(dumps(data))
