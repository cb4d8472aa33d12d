"""Deck composition and single-card probabilities.

A deck is the multiset of cards still unseen from the player's viewpoint:
the dealer's upcard and every player card have been removed, while the
dealer's face-down hole card still counts as in the deck. Ten counts
describe it, one per card value (1 = ace, 10 = ten or any face card).

Two probability views exist for the next card drawn:

* unconditional: ``card_prob(k) = a_k / t``;
* conditioned on the dealer not holding a natural after the peek, which
  reweights draws because one specific rank is excluded as the hole card.
  With a ten showing, the hole cannot be an ace, so

      prob[ace] = a_1 / (t - 1)
      prob[k]   = a_k / (t - 1) * (t - a_1 - 1) / (t - a_1)   for k >= 2

  and symmetrically with an ace showing (the hole cannot be a ten). For
  any other upcard the conditioning changes nothing.

In infinite mode card probabilities are the fixed fractions 1/13 and 4/13,
removals are no-ops, and the conditioned view equals the unconditional one
because draws are independent of the hole card.
"""

from __future__ import annotations

from .errors import DegenerateConditionError, EmptyDeckError, EmptyRankError

COPIES_PER_DECK = (4, 4, 4, 4, 4, 4, 4, 4, 4, 16)

# Per-value probabilities of an infinite shoe.
INFINITE_PROBS = tuple(c / 52 for c in COPIES_PER_DECK)

# Packed-key layout: 6 bits for each of values 1..9, 8 bits for tens.
# Bounds the supported shoe size; casino shoes are 1..8 decks.
_KEY_SHIFT = tuple(6 * k for k in range(9)) + (54,)
_KEY_STEP = tuple(1 << s for s in _KEY_SHIFT)
MAX_DECKS = 15

INFINITE_KEY = -1


class Deck:
    """Mutable card-count state; ``remove_card``/``add_card`` edit in place.

    Each computation thread owns its deck copy. ``key`` is a packed integer
    fingerprint of the counts used by the memoization layers.
    """

    __slots__ = ("counts", "total", "infinite", "key")

    def __init__(self, counts=None):
        if counts is None:
            self.counts = None
            self.total = 0
            self.infinite = True
            self.key = INFINITE_KEY
        else:
            counts = list(counts)
            if len(counts) != 10 or any(c < 0 for c in counts):
                raise ValueError("counts must be 10 non-negative integers")
            self.counts = counts
            self.total = sum(counts)
            self.infinite = False
            self.key = _pack(counts)

    # -- composition -------------------------------------------------------

    def copy(self) -> "Deck":
        if self.infinite:
            return Deck()
        d = Deck.__new__(Deck)
        d.counts = list(self.counts)
        d.total = self.total
        d.infinite = False
        d.key = self.key
        return d

    def count(self, value: int) -> int:
        _check_value(value)
        if self.infinite:
            raise ValueError("infinite deck has no finite counts")
        return self.counts[value - 1]

    def remove_card(self, value: int) -> "Deck":
        _check_value(value)
        if self.infinite:
            return self
        i = value - 1
        if self.counts[i] == 0:
            raise EmptyRankError(f"no cards of value {value} left to remove")
        self.counts[i] -= 1
        self.total -= 1
        self.key -= _KEY_STEP[i]
        return self

    def add_card(self, value: int) -> "Deck":
        _check_value(value)
        if self.infinite:
            return self
        i = value - 1
        self.counts[i] += 1
        self.total += 1
        self.key += _KEY_STEP[i]
        return self

    # -- probabilities -----------------------------------------------------

    def card_prob(self, value: int) -> float:
        """Unconditional probability that the next card drawn is ``value``."""
        _check_value(value)
        if self.infinite:
            return INFINITE_PROBS[value - 1]
        if self.total < 1:
            raise EmptyDeckError("cannot draw from an empty deck")
        return self.counts[value - 1] / self.total

    def card_prob_no_natural(self, value: int, upcard: int) -> float:
        """Probability of drawing ``value`` given the dealer has no natural.

        The deck must already exclude the upcard; the hole card is treated
        as still inside. Only upcards 1 and 10 change anything.
        """
        _check_value(value)
        _check_value(upcard)
        if self.infinite or upcard not in (1, 10):
            return self.card_prob(value)
        if self.total < 2:
            raise EmptyDeckError(
                "conditioned draw needs at least the hole card plus one more"
            )
        excluded = 1 if upcard == 10 else 10
        t = self.total
        a_x = self.counts[excluded - 1]
        if t - a_x < 1:
            raise DegenerateConditionError(
                "every remaining card would complete the dealer's natural"
            )
        a_k = self.counts[value - 1]
        if value == excluded:
            return a_k / (t - 1)
        return a_k / (t - 1) * (t - a_x - 1) / (t - a_x)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        if self.infinite:
            return {"mode": "infinite"}
        return {"mode": "finite", "counts": list(self.counts)}

    @classmethod
    def from_json(cls, obj: dict) -> "Deck":
        mode = obj.get("mode")
        if mode == "infinite":
            return cls()
        if mode == "finite":
            return cls(obj.get("counts"))
        raise ValueError(f"unknown deck mode: {mode!r}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Deck):
            return NotImplemented
        if self.infinite or other.infinite:
            return self.infinite == other.infinite
        return self.counts == other.counts

    def __repr__(self) -> str:
        if self.infinite:
            return "Deck(infinite)"
        return f"Deck({self.counts})"


def _check_value(value: int) -> None:
    if not 1 <= value <= 10:
        raise ValueError(f"card value must be 1..10, got {value}")


def _pack(counts) -> int:
    key = 0
    for i, c in enumerate(counts):
        limit = 255 if i == 9 else 63
        if c > limit:
            raise ValueError(f"count {c} for value {i + 1} exceeds supported shoe size")
        key += c << _KEY_SHIFT[i]
    return key


def new_deck(n_decks: int) -> Deck:
    """Fresh shoe of ``n_decks`` standard 52-card decks."""
    if not isinstance(n_decks, int) or n_decks < 1:
        raise ValueError(f"n_decks must be a positive integer, got {n_decks}")
    if n_decks > MAX_DECKS:
        raise ValueError(f"at most {MAX_DECKS} decks are supported")
    return Deck([c * n_decks for c in COPIES_PER_DECK])


def infinite_deck() -> Deck:
    """Shoe with constant card probabilities and no-op removals."""
    return Deck()
