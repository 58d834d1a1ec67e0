"""Comply/constrain subtraction games: Grundy engine, closed forms, periodicity.

A comply/constrain subtraction game is a single-heap subtraction game where
each move also dictates whether the opponent draws their next move from the
base set S or from its complement. This package computes Grundy values for
such games by mex dynamic programming, provides exact closed forms for the
consecutive family S = {1..k}, and predicts and verifies the eventual
periodicity of finite arithmetic-progression families.
"""

from .arith import (
    BlockCheck,
    BlockPrediction,
    HypothesisViolationError,
    InsufficientDataError,
    PeriodReport,
    block_prediction_map,
    check_finite_infinite_agreement,
    detect_period,
    predict_block_value,
    predicted_period,
    verify_arith,
)
from .consecutive import (
    ConsecutiveCase,
    ConsecutiveReport,
    Mismatch,
    closed_form_base,
    closed_form_complement,
    verify_consecutive,
)
from .engine import (
    DEFAULT_STATE_CEILING,
    GrundyTable,
    ResourceLimitError,
    build_table,
    grundy,
    mex,
    table_from_csv,
    table_from_json,
    winning_moves,
)
from .rules import (
    Consecutive,
    Explicit,
    FiniteArithmetic,
    InfiniteArithmetic,
    Position,
    RuleSet,
    RulesetSyntaxError,
    Side,
    contains,
    legal_moves,
    options,
    parse_ruleset,
    parse_side,
)

__version__ = "0.1.0"

__all__ = [
    "BlockCheck",
    "BlockPrediction",
    "Consecutive",
    "ConsecutiveCase",
    "ConsecutiveReport",
    "DEFAULT_STATE_CEILING",
    "Explicit",
    "FiniteArithmetic",
    "GrundyTable",
    "HypothesisViolationError",
    "InfiniteArithmetic",
    "InsufficientDataError",
    "Mismatch",
    "PeriodReport",
    "Position",
    "ResourceLimitError",
    "RuleSet",
    "RulesetSyntaxError",
    "Side",
    "block_prediction_map",
    "build_table",
    "check_finite_infinite_agreement",
    "closed_form_base",
    "closed_form_complement",
    "contains",
    "detect_period",
    "grundy",
    "legal_moves",
    "mex",
    "options",
    "parse_ruleset",
    "parse_side",
    "predict_block_value",
    "predicted_period",
    "table_from_csv",
    "table_from_json",
    "verify_arith",
    "verify_consecutive",
    "winning_moves",
]
