"""Exact blackjack expected-value engine over arbitrary deck compositions."""

from ._kernels import clear_caches, warm_up
from .deck import Deck, infinite_deck, new_deck
from .dealer import (
    DealerDist,
    dealer_dist,
    dealer_dist_no_natural,
    natural_prob,
)
from .errors import (
    DegenerateConditionError,
    EmptyDeckError,
    EmptyRankError,
    EngineError,
)
from .expectation import (
    GameExpectation,
    RemovalEffects,
    estimate_expected_win,
    expected_win,
    removal_effects,
)
from .hand import Hand, hand_from_cards, is_natural
from .rules import Rules, parse_option_bits
from .simulator import SimReport, simulate_dealer, simulate_round
from .strategy import (
    Action,
    ActionEvaluation,
    best_action,
    double_ev,
    evaluate_hand,
    hit_ev,
    no_split_ev,
    split_aces_ev,
    split_ev,
    stand_ev,
)

__version__ = "0.1.0"

__all__ = [
    "Action",
    "ActionEvaluation",
    "DealerDist",
    "Deck",
    "DegenerateConditionError",
    "EmptyDeckError",
    "EmptyRankError",
    "EngineError",
    "GameExpectation",
    "Hand",
    "RemovalEffects",
    "Rules",
    "SimReport",
    "best_action",
    "clear_caches",
    "dealer_dist",
    "dealer_dist_no_natural",
    "double_ev",
    "estimate_expected_win",
    "evaluate_hand",
    "expected_win",
    "hand_from_cards",
    "hit_ev",
    "infinite_deck",
    "is_natural",
    "natural_prob",
    "new_deck",
    "no_split_ev",
    "parse_option_bits",
    "removal_effects",
    "simulate_dealer",
    "simulate_round",
    "split_aces_ev",
    "split_ev",
    "stand_ev",
]
