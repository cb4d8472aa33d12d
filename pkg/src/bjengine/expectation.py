"""Whole-game expected win, card-removal effects, and the linear estimator.

The whole-game value weights each upcard by its draw probability and, per
upcard, sums over ordered player two-card hands drawn under the post-peek
measure. Ace and ten upcards add the dealer-natural case first: the player
loses one bet unless also holding a natural (a push), and the remaining
weight plays out normally.

Two treatments of the post-peek information are supported for ace/ten
upcards, chosen by ``natural_depletion``:

* ``True`` (default): besides reweighting draws, one natural-completing
  card is discarded from the unseen deck for the no-natural branch, as if
  the peek had consumed it. This is the convention behind the published
  whole-game and removal-effect tables this engine reproduces.
* ``False``: the conditioning only reweights draw probabilities; the deck
  keeps all its cards. This is the measure-exact treatment validated by
  the exhaustive small-deck oracle and the Monte Carlo simulator.

The two agree exactly on an infinite shoe and differ by roughly 0.7 / n
percentage points on an n-deck shoe.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .deck import COPIES_PER_DECK, Deck
from .hand import is_natural
from .rules import Rules
from .strategy import DEFAULT_HIT_DEPTH, best_action


@dataclass(frozen=True)
class GameExpectation:
    """Expected win per unit bet, whole game and per upcard."""

    ew: float
    per_upcard: dict

    def to_json(self) -> dict:
        return {"ew": self.ew,
                "per_upcard": {str(k): v for k, v in self.per_upcard.items()}}


@dataclass(frozen=True)
class RemovalEffects:
    """Change in expected win when one card of each value is removed."""

    r: dict
    base_ew: float

    def to_json(self) -> dict:
        return {"base_ew": self.base_ew,
                "r": {str(k): v for k, v in self.r.items()}}


def _q_or_zero(deck: Deck, value: int, upcard: int) -> float:
    """Conditioned draw probability, zero when the draw is impossible."""
    if deck.infinite:
        return deck.card_prob(value)
    if deck.counts[value - 1] == 0:
        return 0.0
    if upcard in (1, 10) and deck.total < 2:
        return 0.0
    return deck.card_prob_no_natural(value, upcard)


def _p_or_zero(deck: Deck, value: int) -> float:
    if deck.infinite:
        return deck.card_prob(value)
    if deck.total == 0 or deck.counts[value - 1] == 0:
        return 0.0
    return deck.counts[value - 1] / deck.total


def pair_prob(i: int, j: int, upcard: int, deck: Deck) -> float:
    """Ordered probability of drawing ``i`` then ``j`` post-peek."""
    qi = _q_or_zero(deck, i, upcard)
    if qi == 0.0:
        return 0.0
    deck.remove_card(i)
    try:
        qj = _q_or_zero(deck, j, upcard)
    finally:
        deck.add_card(i)
    return qi * qj


def _hand_value(c1: int, c2: int, upcard: int, deck: Deck, rules: Rules,
                rec: int) -> float:
    """Best expected win for the dealt hand; naturals pay 3:2 outright."""
    if is_natural(c1, c2):
        return rules.natural_payout
    return best_action(c1, c2, upcard, deck, rules, rec).best_ev


def expected_win_upcard(upcard: int, deck: Deck, rules: Rules,
                        rec: int = DEFAULT_HIT_DEPTH,
                        natural_depletion: bool = True) -> float:
    """Expected win given the upcard; deck is the shoe minus that card."""
    nat_rank = 10 if upcard == 1 else (1 if upcard == 10 else 0)
    p_nat = _p_or_zero(deck, nat_rank) if nat_rank else 0.0
    total = 0.0
    if nat_rank and p_nat > 0.0:
        # dealer natural: the player loses one bet unless also natural
        deck.remove_card(nat_rank)
        p_player_nat = 0.0
        p1 = _p_or_zero(deck, 1)
        if p1 > 0.0:
            deck.remove_card(1)
            p_player_nat = 2.0 * p1 * _p_or_zero(deck, 10)
            deck.add_card(1)
        deck.add_card(nat_rank)
        total -= p_nat * (1.0 - p_player_nat)
    if p_nat >= 1.0:
        return total
    depleted = (natural_depletion and nat_rank and not deck.infinite
                and deck.counts[nat_rank - 1] > 0)
    if depleted:
        deck.remove_card(nat_rank)
    try:
        played = 0.0
        for i in range(1, 11):
            qi = _q_or_zero(deck, i, upcard)
            if qi == 0.0:
                continue
            for j in range(i, 11):
                deck.remove_card(i)
                w = qi * _q_or_zero(deck, j, upcard)
                deck.add_card(i)
                if j != i:
                    qj = _q_or_zero(deck, j, upcard)
                    if qj > 0.0:
                        deck.remove_card(j)
                        w += qj * _q_or_zero(deck, i, upcard)
                        deck.add_card(j)
                if w <= 0.0:
                    continue
                deck.remove_card(i)
                deck.remove_card(j)
                try:
                    ev = _hand_value(i, j, upcard, deck, rules, rec)
                finally:
                    deck.add_card(j)
                    deck.add_card(i)
                played += w * ev
    finally:
        if depleted:
            deck.add_card(nat_rank)
    total += (1.0 - p_nat) * played
    return total


def expected_win(deck: Deck, rules: Rules, rec: int = DEFAULT_HIT_DEPTH,
                 natural_depletion: bool = True) -> GameExpectation:
    """Whole-game expected win under optimal play on the pre-deal deck."""
    per = {}
    ew = 0.0
    for d in range(1, 11):
        pd = _p_or_zero(deck, d)
        if pd == 0.0:
            continue
        deck.remove_card(d)
        try:
            w = expected_win_upcard(d, deck, rules, rec, natural_depletion)
        finally:
            deck.add_card(d)
        per[d] = w
        ew += pd * w
    return GameExpectation(ew=ew, per_upcard=per)


def removal_effects(deck: Deck, rules: Rules, rec: int = DEFAULT_HIT_DEPTH,
                    natural_depletion: bool = True) -> RemovalEffects:
    """Per-value change in expected win from removing one card."""
    if deck.infinite:
        raise ValueError("removal effects need a finite deck")
    base = expected_win(deck, rules, rec, natural_depletion).ew
    r = {}
    for value in range(1, 11):
        if deck.counts[value - 1] < 1:
            continue
        deck.remove_card(value)
        try:
            r[value] = expected_win(deck, rules, rec, natural_depletion).ew - base
        finally:
            deck.add_card(value)
    return RemovalEffects(r=r, base_ew=base)


def estimate_expected_win(deck: Deck, removed, effects, base_ew: float) -> float:
    """Linear estimate of the expected win after ``removed`` cards leave.

    ``deck`` is the fresh shoe the effects were computed for and ``effects``
    maps whole deck counts to RemovalEffects columns (a single column is
    accepted and used as a constant). Removing the m-th copy of a value
    reads that value's effect at the rank's effective shoe depth,
    ``n0 - m/copies_per_deck``, interpolated linearly between columns and
    clamped at the ends of the table.
    """
    if deck.infinite:
        raise ValueError("the estimator needs a finite base deck")
    if isinstance(effects, RemovalEffects):
        effects = {max(round(deck.total / 52), 1): effects}
    if not effects:
        raise ValueError("need at least one removal-effects column")
    n0 = deck.total / 52
    columns = sorted(effects)
    est = base_ew
    for value, copies in sorted(Counter(removed).items()):
        per_deck = COPIES_PER_DECK[value - 1]
        for m in range(copies):
            est += _interp(effects, columns, value, n0 - m / per_deck)
    return est


def _interp(effects, columns, value: int, n_eff: float) -> float:
    if n_eff <= columns[0]:
        return effects[columns[0]].r[value]
    if n_eff >= columns[-1]:
        return effects[columns[-1]].r[value]
    for lo, hi in zip(columns, columns[1:]):
        if lo <= n_eff <= hi:
            f = (n_eff - lo) / (hi - lo)
            return (1.0 - f) * effects[lo].r[value] + f * effects[hi].r[value]
    raise AssertionError("unreachable")
