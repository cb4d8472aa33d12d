"""Dealer outcome distributions for a given upcard and deck.

Outcomes are coded 17..23: totals 17 through 21, where 21 excludes the
two-card ace+ten hand; 22 is that natural; 23 is a bust. Distributions
come in two measures: unconditional, and conditioned on the dealer not
holding a natural (the post-peek view every player decision uses).

Two computation routes exist. The production route evaluates a
precomputed dealer-hand table (see _kernels) and is what
``dealer_dist``/``dealer_dist_no_natural`` use. The recursive procedures
below (``draw_sum_prob`` through ``dealer_outcome_prob``) walk the draw
tree directly, splitting totals into a hard chain, a soft ladder, and
terminal run-sum fills; they are kept as an independently-derived
cross-check and as the reference for small-deck behavior. The recursive
route models a dealer who stands on soft 17; with the hit-soft-17 flag
set, ``dealer_outcome_prob`` answers from the table route instead.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _kernels
from .deck import Deck
from .errors import DegenerateConditionError, EmptyDeckError
from .hand import add_to_total
from .rules import Rules

NATURAL = 22
BUST = 23
OUTCOMES = (17, 18, 19, 20, 21, NATURAL, BUST)


@dataclass(frozen=True)
class DealerDist:
    """Probability per outcome code, plus which measure it is."""

    probs: dict
    conditioned: bool

    def __getitem__(self, outcome: int) -> float:
        return self.probs[outcome]

    def to_json(self) -> dict:
        return {str(k): v for k, v in self.probs.items()}


def natural_prob(deck: Deck, upcard: int) -> float:
    """Probability the hole card completes a natural under ``upcard``."""
    if upcard == 10:
        return deck.card_prob(1)
    if upcard == 1:
        return deck.card_prob(10)
    if deck.total < 1 and not deck.infinite:
        raise EmptyDeckError("no hole card available")
    return 0.0


def dealer_dist(upcard: int, deck: Deck, rules: Rules) -> DealerDist:
    """Unconditional outcome distribution; deck excludes the upcard."""
    raw = _kernels.raw_dealer_dist(upcard, deck, rules.dealer_hits_soft17)
    p_nat = natural_prob(deck, upcard)
    probs = {17 + i: raw[i] for i in range(4)}
    probs[21] = max(raw[4] - p_nat, 0.0)
    probs[NATURAL] = p_nat
    # summed in the same association as the conditioned route so the two
    # distributions are bit-identical when no natural is possible
    bust = 1.0 - (raw[0] + raw[1] + raw[2] + raw[3] + raw[4])
    probs[BUST] = max(bust, 0.0)
    return DealerDist(probs, conditioned=False)


def dealer_dist_no_natural(upcard: int, deck: Deck, rules: Rules) -> DealerDist:
    """Distribution conditioned on no dealer natural; 22 has probability 0."""
    p_nat = natural_prob(deck, upcard)
    if p_nat >= 1.0:
        raise DegenerateConditionError(
            "dealer natural is certain; conditional distribution undefined"
        )
    q = _kernels.q_dealer_dist(upcard, deck, rules.dealer_hits_soft17)
    probs = {17 + i: q[i] for i in range(5)}
    probs[NATURAL] = 0.0
    probs[BUST] = q[5]
    return DealerDist(probs, conditioned=True)


def q_tuple(upcard: int, deck: Deck, rules: Rules):
    """No-natural distribution as the raw (q17..q21, bust) tuple."""
    p_nat = natural_prob(deck, upcard)
    if p_nat >= 1.0:
        raise DegenerateConditionError(
            "dealer natural is certain; conditional distribution undefined"
        )
    return _kernels.q_dealer_dist(upcard, deck, rules.dealer_hits_soft17)


# --------------------------------------------------------------------------
# Recursive route


def _prob_or_zero(deck: Deck, value: int) -> float:
    if deck.infinite:
        return deck.card_prob(value)
    if deck.counts[value - 1] == 0:
        return 0.0
    return deck.counts[value - 1] / deck.total


def draw_sum_prob(a: int, deck: Deck) -> float:
    """Probability that consecutive draws sum to exactly ``a`` (0..6).

    Sums over every ordered run of card values adding to ``a``; the empty
    run gives 1 for a=0. Runs the deck cannot supply contribute nothing.
    """
    if not 0 <= a <= 6:
        raise ValueError(f"run total must be 0..6, got {a}")
    if a == 0:
        return 1.0
    total = 0.0
    for k in range(1, min(a, 10) + 1):
        tmp = _prob_or_zero(deck, k)
        if tmp > 0.0:
            deck.remove_card(k)
            total += tmp * draw_sum_prob(a - k, deck)
            deck.add_card(k)
    return total


def draw_sum_prob_pair(a: int, b: int, deck: Deck) -> float:
    """Probability of a run summing to ``a`` followed by one summing to ``b``."""
    if not (0 <= a <= 5 and 0 <= b <= 5):
        raise ValueError("run totals must be 0..5")
    if a == 0:
        return draw_sum_prob(b, deck)
    if b == 0:
        return draw_sum_prob(a, deck)
    total = 0.0
    for k in range(1, a + 1):
        tmp = _prob_or_zero(deck, k)
        if tmp > 0.0:
            deck.remove_card(k)
            total += tmp * draw_sum_prob_pair(a - k, b, deck)
            deck.add_card(k)
    return total


def soft_to_hard_prob(start: int, target: int, deck: Deck) -> float:
    """Probability a soft total ``start`` (<=16) lands on hard ``target`` (<=17).

    The soft ladder climbs until a card busts the 11-ace; the demoted hard
    total (12..16) is then filled to the target by a run of draws.
    """
    total = 0.0
    for k in range(1, 11):
        tmp = _prob_or_zero(deck, k)
        if tmp <= 0.0:
            continue
        nt, ns = add_to_total(start, True, k)
        deck.remove_card(k)
        if ns:
            if nt <= 16:
                total += tmp * soft_to_hard_prob(nt, target, deck)
            # soft 17..21 stands and can never become the hard target
        elif nt <= target:
            total += tmp * draw_sum_prob(target - nt, deck)
        deck.add_card(k)
    return total


def hard_reach_prob(start: int, target: int, deck: Deck) -> float:
    """Probability of reaching exactly hard ``target`` (<=17) from ``start``.

    ``start`` is a hard running total, except that 1 means the ace upcard,
    which begins as a soft 11 and only produces hard totals by demotion.
    Below hard 6 an ace turns the hand soft and the soft ladder takes over;
    from 11 up, the remaining gap is a plain run of draws.
    """
    if start == 1:
        return soft_to_hard_prob(11, target, deck)
    if target == start:
        return 1.0
    if target - start == 1:
        return 0.0
    total = 0.0
    tmp = _prob_or_zero(deck, 1)
    if tmp > 0.0 and start + 11 <= 16:
        deck.remove_card(1)
        total += tmp * soft_to_hard_prob(start + 11, target, deck)
        deck.add_card(1)
    for k in range(2, min(target - start, 10) + 1):
        tmp = _prob_or_zero(deck, k)
        if tmp <= 0.0:
            continue
        deck.remove_card(k)
        if start + k < 11:
            total += tmp * hard_reach_prob(start + k, target, deck)
        else:
            total += tmp * draw_sum_prob(target - start - k, deck)
        deck.add_card(k)
    return total


def soft_reach_prob(start: int, target: int, deck: Deck) -> float:
    """Probability of reaching soft ``target`` from the upcard total ``start``.

    ``start`` of 1 begins at soft 11 (the ace upcard); any other start is a
    hard total. Enumerates every draw path while the dealer still hits.
    """
    if start == 1:
        return _visit_soft(11, True, target, deck)
    return _visit_soft(start, False, target, deck)


def _visit_soft(total: int, soft: bool, target: int, deck: Deck) -> float:
    if soft and total == target:
        return 1.0
    if total >= 17 or total > 21:
        return 0.0
    acc = 0.0
    for k in range(1, 11):
        tmp = _prob_or_zero(deck, k)
        if tmp <= 0.0:
            continue
        nt, ns = add_to_total(total, soft, k)
        deck.remove_card(k)
        acc += tmp * _visit_soft(nt, ns, target, deck)
        deck.add_card(k)
    return acc


def reach_prob(start: int, target: int, deck: Deck) -> float:
    """Probability the running total hits ``target`` (<=17), soft or hard."""
    if target > 17:
        raise ValueError("reach targets stop at 17")
    return soft_reach_prob(start, target, deck) + hard_reach_prob(start, target, deck)


def dealer_outcome_prob(upcard: int, final: int, deck: Deck, rules: Rules) -> float:
    """Probability the dealer finishes on ``final`` (17..21, naturals inside 21).

    Decomposes on the last card drawn: the hand sat on some total at most
    16, and one more card (possibly an ace counted as 11) landed exactly on
    ``final``. A final total of 17 is just the reach probability, because
    hitting 17 ends the hand. The decomposition assumes the dealer stands
    on soft 17; with hit-soft-17 rules the table route answers instead.
    """
    if not 17 <= final <= 21:
        raise ValueError(f"final total must be 17..21, got {final}")
    if rules.dealer_hits_soft17:
        raw = _kernels.raw_dealer_dist(upcard, deck, True)
        return raw[final - 17]
    if final == 17:
        return reach_prob(upcard, 17, deck)
    total = 0.0
    for i in range(final - 16, min(final - upcard, 11) + 1):
        card = 1 if i == 11 else i
        tmp = _prob_or_zero(deck, card)
        if tmp > 0.0:
            deck.remove_card(card)
            total += tmp * reach_prob(upcard, final - i, deck)
            deck.add_card(card)
    return total
