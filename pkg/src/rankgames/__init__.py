"""Equilibrium solvers for competitiveness-based ranking games.

Players pick (cost, score) strategies, get ranked by score, receive
rank-indexed prizes (shared on ties) and pay their cost.  Everything is
computed in exact rational arithmetic.
"""

from rankgames.rational import Rat, parse_rat, format_rat
from rankgames.game import (
    StrategySpec,
    RankingGame,
    ScoreSymmetricGame,
    MixedProfile,
    NormalizationRecord,
    validate,
    normalize,
    eliminate_degenerate,
)
from rankgames.payoffs import (
    EquilibriumCertificate,
    pure_payoffs,
    expected_payoff_enum,
    expected_payoff_anonymous,
    verify,
)

__all__ = [
    "Rat",
    "parse_rat",
    "format_rat",
    "StrategySpec",
    "RankingGame",
    "ScoreSymmetricGame",
    "MixedProfile",
    "NormalizationRecord",
    "validate",
    "normalize",
    "eliminate_degenerate",
    "EquilibriumCertificate",
    "pure_payoffs",
    "expected_payoff_enum",
    "expected_payoff_anonymous",
    "verify",
]

__version__ = "0.1.0"
