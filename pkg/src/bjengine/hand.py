"""Blackjack hand arithmetic: totals with soft/hard ace handling.

A hand keeps no card history. Only the best legal total and whether an ace
is currently counted as 11 matter to any expectation formula; pair and
natural detection happen at the call site from the two initial card values.
"""

from __future__ import annotations

from dataclasses import dataclass


def add_to_total(total: int, soft: bool, card: int) -> tuple[int, bool]:
    """Add one card value (1..10) to a running (total, soft) state.

    An ace counts as 11 when that keeps the total at 21 or below and no
    other ace is already counted as 11; any addition that pushes a soft
    total past 21 demotes the 11-ace instead of busting.
    """
    if card == 1 and not soft and total + 11 <= 21:
        return total + 11, True
    total += card
    if soft and total > 21:
        return total - 10, False
    return total, soft


@dataclass(frozen=True)
class Hand:
    """Best legal total plus the soft flag."""

    total: int
    soft: bool = False

    def add(self, card: int) -> "Hand":
        return Hand(*add_to_total(self.total, self.soft, card))

    def __add__(self, card: int) -> "Hand":
        return self.add(card)

    @property
    def is_bust(self) -> bool:
        return self.total > 21

    # Comparisons are against a plain total.
    def __lt__(self, n: int) -> bool:
        return self.total < n

    def __le__(self, n: int) -> bool:
        return self.total <= n

    def __gt__(self, n: int) -> bool:
        return self.total > n

    def __ge__(self, n: int) -> bool:
        return self.total >= n

    def to_json(self) -> dict:
        return {"total": self.total, "soft": self.soft}


def hand_from_cards(cards) -> Hand:
    """Build a hand by adding card values in order (order does not matter)."""
    total, soft = 0, False
    for c in cards:
        if not 1 <= c <= 10:
            raise ValueError(f"card value out of range: {c}")
        total, soft = add_to_total(total, soft, c)
    return Hand(total, soft)


def is_natural(card1: int, card2: int) -> bool:
    """True when the two initial cards are an ace and a ten-value."""
    return {card1, card2} == {1, 10}
