"""Expected win per player option and the optimal-action selector.

All expectations are taken under the post-peek measure: the dealer is
known not to hold a natural, which reweights both the dealer's outcome
distribution and the card-draw probabilities when an ace or ten is
showing. Values are in units of the original bet.

Player naturals never reach these functions; the caller settles them at
3:2 before asking for advice. An ace+ten assembled after a split is an
ordinary 21.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from . import _kernels
from .deck import Deck
from .errors import DegenerateConditionError
from .hand import Hand, is_natural
from .rules import Rules

DEFAULT_HIT_DEPTH = 13


class Action(str, enum.Enum):
    STAND = "stand"
    HIT = "hit"
    DOUBLE = "double"
    SPLIT = "split"


# Equal expected wins resolve to the earlier action in this order.
TIE_BREAK = (Action.STAND, Action.HIT, Action.DOUBLE, Action.SPLIT)


@dataclass(frozen=True)
class ActionEvaluation:
    """Per-action expected wins plus the recommendation."""

    ev_stand: float
    ev_hit: float
    ev_double: float | None = None
    ev_split: float | None = None
    best: Action = Action.STAND

    @property
    def best_ev(self) -> float:
        return {
            Action.STAND: self.ev_stand,
            Action.HIT: self.ev_hit,
            Action.DOUBLE: self.ev_double,
            Action.SPLIT: self.ev_split,
        }[self.best]

    def to_json(self) -> dict:
        return {
            "ev_stand": self.ev_stand,
            "ev_hit": self.ev_hit,
            "ev_double": self.ev_double,
            "ev_split": self.ev_split,
            "best": self.best.value,
        }


def _check_context(deck: Deck, upcard: int) -> None:
    """Reject decks on which the no-natural conditioning is impossible."""
    if deck.infinite or upcard not in (1, 10):
        return
    if deck.total < 1:
        raise DegenerateConditionError("no hole card available")
    excluded = 1 if upcard == 10 else 10
    if deck.total - deck.counts[excluded - 1] < 1:
        raise DegenerateConditionError(
            "every remaining card would complete the dealer's natural"
        )


def stand_ev(hand: Hand, upcard: int, deck: Deck, rules: Rules) -> float:
    """Expected win of standing on ``hand``; the deck excludes the upcard."""
    if hand.total > 21:
        return -1.0
    _check_context(deck, upcard)
    return _kernels.stand_ev(hand.total, upcard, deck, rules.dealer_hits_soft17)


def hit_ev(hand: Hand, upcard: int, deck: Deck, rules: Rules,
           rec: int = DEFAULT_HIT_DEPTH) -> float:
    """Expected win of hitting, re-deciding after each card.

    ``rec`` bounds the number of nested hit decisions; past the longest
    useful draw chain the value no longer changes. A hand reaching 21
    always stands.
    """
    if rec < 0:
        raise ValueError("recursion depth must be non-negative")
    _check_context(deck, upcard)
    return _kernels.hit_ev(hand.total, hand.soft, rec, upcard, deck,
                           rules.dealer_hits_soft17)


def double_ev(hand: Hand, upcard: int, deck: Deck, rules: Rules) -> float:
    """Expected win of doubling: twice the bet, exactly one more card."""
    _check_context(deck, upcard)
    return _kernels.double_ev(hand.total, hand.soft, upcard, deck,
                              rules.dealer_hits_soft17)


def no_split_ev(hand: Hand, upcard: int, deck: Deck, rules: Rules,
                rec: int = DEFAULT_HIT_DEPTH) -> float:
    """Best value of playing out one post-split two-card hand.

    At 21 or more the hand stands; otherwise the best of stand, hit, and
    (when doubling after split is allowed) double.
    """
    _check_context(deck, upcard)
    return _kernels.no_split_ev(hand.total, hand.soft, upcard, deck,
                                rules.dealer_hits_soft17, rules.das, rec)


def split_ev(pair_value: int, upcard: int, deck: Deck, rules: Rules,
             rsp_active: bool | None = None,
             rec: int = DEFAULT_HIT_DEPTH) -> float:
    """Expected win of splitting a non-ace pair.

    Twice the value of one post-split hand; when re-splitting is active
    and the drawn card pairs up again, the better of playing the hand and
    splitting once more is taken (the re-split itself cannot re-split, so
    one starting hand yields at most four).
    """
    if not 2 <= pair_value <= 10:
        raise ValueError("non-ace pair value must be 2..10")
    _check_context(deck, upcard)
    rsp = rules.rsp if rsp_active is None else rsp_active
    return _kernels.split_ev(pair_value, upcard, deck,
                             rules.dealer_hits_soft17, rules.das, rsp, rec)


def split_aces_ev(upcard: int, deck: Deck, rules: Rules,
                  rsa_active: bool | None = None,
                  rec: int = DEFAULT_HIT_DEPTH) -> float:
    """Expected win of splitting aces: each hand draws exactly one card.

    With re-splitting active, a drawn ace may be split again once per
    branch; the deeper split runs with the flag off.
    """
    _check_context(deck, upcard)
    rsa = rules.rsa if rsa_active is None else rsa_active
    return _kernels.split_aces_ev(upcard, deck, rules.dealer_hits_soft17,
                                  rsa, rec)


def best_action(card1: int, card2: int, upcard: int, deck: Deck, rules: Rules,
                rec: int = DEFAULT_HIT_DEPTH) -> ActionEvaluation:
    """Evaluate every legal option for a two-card hand and pick the best.

    The deck must already exclude both player cards and the upcard. The
    hand must not be a natural; naturals pay 3:2 with no decision to make.
    """
    if is_natural(card1, card2):
        raise ValueError("naturals are settled before strategy evaluation")
    hand = Hand(0).add(card1).add(card2)
    ev_s = stand_ev(hand, upcard, deck, rules)
    ev_h = hit_ev(hand, upcard, deck, rules, rec)
    ev_d = double_ev(hand, upcard, deck, rules)
    ev_p = None
    if card1 == card2:
        if card1 == 1:
            ev_p = split_aces_ev(upcard, deck, rules, rec=rec)
        else:
            ev_p = split_ev(card1, upcard, deck, rules, rec=rec)
    return _pick(ev_s, ev_h, ev_d, ev_p)


def evaluate_hand(cards, upcard: int, deck: Deck, rules: Rules,
                  rec: int = DEFAULT_HIT_DEPTH) -> ActionEvaluation:
    """Advice for an arbitrary hand: 3+ cards compare stand and hit only."""
    cards = list(cards)
    if len(cards) < 2:
        raise ValueError("a hand needs at least two cards")
    if len(cards) == 2:
        return best_action(cards[0], cards[1], upcard, deck, rules, rec)
    hand = Hand(0)
    for c in cards:
        hand = hand.add(c)
    ev_s = stand_ev(hand, upcard, deck, rules)
    ev_h = hit_ev(hand, upcard, deck, rules, rec)
    return _pick(ev_s, ev_h, None, None)


def _pick(ev_s: float, ev_h: float, ev_d: float | None,
          ev_p: float | None) -> ActionEvaluation:
    evs = {Action.STAND: ev_s, Action.HIT: ev_h,
           Action.DOUBLE: ev_d, Action.SPLIT: ev_p}
    best = Action.STAND
    for action in TIE_BREAK:
        v = evs[action]
        if v is not None and v > evs[best]:
            best = action
    return ActionEvaluation(ev_stand=ev_s, ev_hit=ev_h, ev_double=ev_d,
                            ev_split=ev_p, best=best)
