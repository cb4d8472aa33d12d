"""Monte Carlo cross-check of the exact engine.

Deals are sampled without replacement straight from the deck counts
(categorical draws proportional to each value's count), so the simulator
shares the engine's deck abstraction and cannot drift from its
composition rules. The generator is Philox (64-bit, counter-based),
reproducible across platforms for a fixed seed; shards derive independent
substreams from the seed and their reports merge associatively.

Whole rounds follow the engine's advice re-queried after every card. The
advice deck tracks what the player can see: the shoe minus the upcard and
the player's own cards, with the dealer's hole card still counted as
unseen. Each trial re-deals from a fresh copy of the deck.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .deck import Deck
from .hand import Hand, add_to_total, is_natural
from .rules import Rules
from .strategy import (
    DEFAULT_HIT_DEPTH,
    Action,
    best_action,
    double_ev,
    hit_ev,
    no_split_ev,
    split_aces_ev,
    split_ev,
    stand_ev,
)

_CHUNK = 1 << 16


@dataclass(frozen=True)
class SimReport:
    """Empirical outcome frequencies and (for round games) the mean win."""

    n: int
    freq: dict
    mean: float | None
    stderr: float | None
    seed: int
    aborted: int = 0

    def to_json(self) -> dict:
        return {"n": self.n, "freq": {str(k): v for k, v in self.freq.items()},
                "mean": self.mean, "stderr": self.stderr, "seed": self.seed,
                "aborted": self.aborted}


def merge_reports(a: SimReport, b: SimReport) -> SimReport:
    """Combine two reports over disjoint trial sets."""
    n = a.n + b.n
    keys = set(a.freq) | set(b.freq)
    freq = {k: (a.freq.get(k, 0.0) * a.n + b.freq.get(k, 0.0) * b.n) / n
            for k in keys}
    mean = stderr = None
    if a.mean is not None and b.mean is not None:
        mean = (a.mean * a.n + b.mean * b.n) / n
        sa2 = (a.stderr ** 2) * a.n * (a.n - 1) if a.n > 1 else 0.0
        sb2 = (b.stderr ** 2) * b.n * (b.n - 1) if b.n > 1 else 0.0
        ss = sa2 + sb2 + a.n * (a.mean - mean) ** 2 + b.n * (b.mean - mean) ** 2
        stderr = math.sqrt(ss / (n - 1) / n) if n > 1 else 0.0
    return SimReport(n=n, freq=freq, mean=mean, stderr=stderr, seed=a.seed,
                     aborted=a.aborted + b.aborted)


def _shard_sizes(n: int, shards: int):
    shards = max(1, min(shards, n))
    size = n // shards
    parts = [size] * shards
    parts[-1] += n - size * shards
    return parts


class _Drawer:
    """Buffered Philox uniforms feeding categorical card draws."""

    def __init__(self, seedseq):
        self.rng = np.random.Generator(np.random.Philox(seedseq))
        self.buf = self.rng.random(_CHUNK)
        self.pos = 0

    def draw(self, counts, t):
        """Sample a card value proportional to counts; -1 on an empty deck."""
        if t <= 0:
            return -1
        if self.pos >= len(self.buf):
            self.buf = self.rng.random(_CHUNK)
            self.pos = 0
        r = self.buf[self.pos] * t
        self.pos += 1
        acc = 0
        for k in range(10):
            acc += counts[k]
            if r < acc:
                return k + 1
        return 10


def simulate_dealer(upcard: int, deck: Deck, rules: Rules, n: int,
                    seed: int, shards: int = 1) -> SimReport:
    """Sample dealer hands; frequencies cover outcome codes 17..23.

    A trial whose deck runs out before the dealer can finish counts as
    aborted and is excluded from the frequencies.
    """
    if n < 1:
        raise ValueError("need at least one trial")
    if deck.infinite:
        raise ValueError("simulation needs a finite deck")
    report = None
    parts = _shard_sizes(n, shards)
    for size, ss in zip(parts, np.random.SeedSequence(seed).spawn(len(parts))):
        r = _dealer_shard(upcard, deck, rules, size, seed, ss)
        report = r if report is None else merge_reports(report, r)
    return report


def _dealer_shard(upcard, deck, rules, n, seed, seedseq):
    drawer = _Drawer(seedseq)
    h17 = rules.dealer_hits_soft17
    counts = list(deck.counts)
    t0 = deck.total
    outcomes = {k: 0 for k in (17, 18, 19, 20, 21, 22, 23)}
    aborted = 0
    for _ in range(n):
        drawn = []
        t = t0
        total, soft = (11, True) if upcard == 1 else (upcard, False)
        first = True
        result = None
        while True:
            if total > 21:
                result = 23
                break
            if total >= 18 or (total == 17 and not (h17 and soft)):
                result = total
                break
            card = drawer.draw(counts, t)
            if card < 0:
                break
            counts[card - 1] -= 1
            drawn.append(card)
            t -= 1
            if first:
                first = False
                if (upcard == 10 and card == 1) or (upcard == 1 and card == 10):
                    result = 22
                    break
            total, soft = add_to_total(total, soft, card)
        for c in drawn:
            counts[c - 1] += 1
        if result is None:
            aborted += 1
        else:
            outcomes[result] += 1
    completed = n - aborted
    freq = {k: (v / completed if completed else 0.0)
            for k, v in outcomes.items()}
    return SimReport(n=n, freq=freq, mean=None, stderr=None, seed=seed,
                     aborted=aborted)


def simulate_round(deck: Deck, rules: Rules, n: int, seed: int,
                   shards: int = 1, rec: int = DEFAULT_HIT_DEPTH) -> SimReport:
    """Play whole rounds with engine advice; the mean estimates E[W].

    Naturals settle 3:2 after the dealer's peek. The mean is comparable to
    ``expected_win(..., natural_depletion=False)``, the measure-exact
    value, since the simulation plays the physical game.
    """
    if n < 1:
        raise ValueError("need at least one trial")
    if deck.infinite:
        raise ValueError("simulation needs a finite deck")
    report = None
    parts = _shard_sizes(n, shards)
    for size, ss in zip(parts, np.random.SeedSequence(seed).spawn(len(parts))):
        r = _round_shard(deck, rules, size, seed, ss, rec)
        report = r if report is None else merge_reports(report, r)
    return report


class _Advisor:
    """Engine advice memoized per (cards seen, hand state) situation."""

    def __init__(self, rules, rec):
        self.rules = rules
        self.rec = rec
        self.cache: dict = {}

    def initial(self, c1, c2, up, adeck):
        key = ("2", min(c1, c2), max(c1, c2), up, adeck.key)
        got = self.cache.get(key)
        if got is None:
            got = best_action(c1, c2, up, adeck, self.rules, self.rec).best
            self.cache[key] = got
        return got

    def stand_or_hit(self, hand, up, adeck):
        key = ("h", hand.total, hand.soft, up, adeck.key)
        got = self.cache.get(key)
        if got is None:
            s = stand_ev(hand, up, adeck, self.rules)
            h = hit_ev(hand, up, adeck, self.rules, self.rec)
            got = Action.HIT if h > s else Action.STAND
            self.cache[key] = got
        return got

    def resplit_pair(self, pval, up, adeck):
        """Split a re-formed non-ace pair again, or play it as a hand?"""
        key = ("rp", pval, up, adeck.key)
        got = self.cache.get(key)
        if got is None:
            hand = Hand(0).add(pval).add(pval)
            keep = no_split_ev(hand, up, adeck, self.rules, self.rec)
            again = split_ev(pval, up, adeck, self.rules, rsp_active=False,
                             rec=self.rec)
            got = again > keep
            self.cache[key] = got
        return got

    def post_split_play(self, hand, up, adeck):
        """Stand/hit/double choice for a two-card post-split hand."""
        key = ("ps", hand.total, hand.soft, up, adeck.key)
        got = self.cache.get(key)
        if got is None:
            if hand.total >= 21:
                got = Action.STAND
            else:
                best, got = stand_ev(hand, up, adeck, self.rules), Action.STAND
                h = hit_ev(hand, up, adeck, self.rules, self.rec)
                if h > best:
                    best, got = h, Action.HIT
                if self.rules.das:
                    dd = double_ev(hand, up, adeck, self.rules)
                    if dd > best:
                        best, got = dd, Action.DOUBLE
            self.cache[key] = got
        return got

    def resplit_aces(self, up, adeck):
        key = ("ra", up, adeck.key)
        got = self.cache.get(key)
        if got is None:
            stand = stand_ev(Hand(12, True), up, adeck, self.rules)
            again = split_aces_ev(up, adeck, self.rules, rsa_active=False,
                                  rec=self.rec)
            got = again > stand
            self.cache[key] = got
        return got


def _round_shard(deck, rules, n, seed, seedseq, rec):
    drawer = _Drawer(seedseq)
    base = list(deck.counts)
    t0 = deck.total
    advisor = _Advisor(rules, rec)
    total_win = 0.0
    total_sq = 0.0
    freq: dict = {}
    counts = base.copy()
    for _ in range(n):
        game = _Game(drawer, counts, t0, advisor, rules)
        win = game.play()
        game.restore()
        total_win += win
        total_sq += win * win
        freq[win] = freq.get(win, 0) + 1
    mean = total_win / n
    var = max(total_sq / n - mean * mean, 0.0) * (n / (n - 1)) if n > 1 else 0.0
    return SimReport(n=n, freq={k: v / n for k, v in sorted(freq.items())},
                     mean=mean, stderr=math.sqrt(var / n), seed=seed,
                     aborted=0)


class _Game:
    """One dealt round: physical draws plus the player's information deck."""

    def __init__(self, drawer, counts, t, advisor, rules):
        self.drawer = drawer
        self.counts = counts
        self.t = t
        self.advisor = advisor
        self.rules = rules
        self.drawn = []

    def draw(self):
        card = self.drawer.draw(self.counts, self.t)
        if card > 0:
            self.counts[card - 1] -= 1
            self.t -= 1
            self.drawn.append(card)
        return card

    def restore(self):
        for c in self.drawn:
            self.counts[c - 1] += 1

    def play(self) -> float:
        rules = self.rules
        p1, p2, up, hole = self.draw(), self.draw(), self.draw(), self.draw()
        player_nat = is_natural(p1, p2)
        if is_natural(up, hole):
            return 0.0 if player_nat else -1.0
        if player_nat:
            return rules.natural_payout
        # player's view: the hole card is still unseen
        adeck = Deck(self.counts)
        adeck.add_card(hole)
        self.adeck = adeck
        hands = []
        action = self.advisor.initial(p1, p2, up, adeck)
        hand = Hand(0).add(p1).add(p2)
        if action is Action.STAND:
            hands.append((hand.total, 1.0))
        elif action is Action.DOUBLE:
            hands.append((self._one_card(hand).total, 2.0))
        elif action is Action.HIT:
            self._hit_out(self._one_card(hand), up, hands, 1.0)
        elif p1 == 1:
            self._split_aces(up, hands)
        else:
            self._split(p1, up, hands)
        return self._settle(up, hole, hands)

    def _one_card(self, hand):
        card = self.draw()
        if card < 0:
            return hand
        self.adeck.remove_card(card)
        return hand.add(card)

    def _hit_out(self, hand, up, hands, bet):
        while hand.total < 21:
            if self.advisor.stand_or_hit(hand, up, self.adeck) is Action.STAND:
                break
            card = self.draw()
            if card < 0:
                break
            self.adeck.remove_card(card)
            hand = hand.add(card)
        hands.append((hand.total, bet))

    def _split_aces(self, up, hands):
        pending = 2
        may_resplit = [True, True]
        while pending:
            pending -= 1
            allowed = may_resplit.pop() and self.rules.rsa
            card = self.draw()
            if card < 0:
                hands.append((11, 1.0))
                continue
            self.adeck.remove_card(card)
            if card == 1 and allowed and self.advisor.resplit_aces(up, self.adeck):
                pending += 2
                may_resplit += [False, False]
                continue
            hands.append((Hand(11, True).add(card).total, 1.0))

    def _split(self, pval, up, hands):
        pending = 2
        may_resplit = [True, True]
        while pending:
            pending -= 1
            allowed = may_resplit.pop() and self.rules.rsp
            card = self.draw()
            if card < 0:
                hands.append((pval, 1.0))
                continue
            self.adeck.remove_card(card)
            if (card == pval and allowed
                    and self.advisor.resplit_pair(pval, up, self.adeck)):
                pending += 2
                may_resplit += [False, False]
                continue
            hand = Hand(0).add(pval).add(card)
            act = self.advisor.post_split_play(hand, up, self.adeck)
            if act is Action.STAND:
                hands.append((hand.total, 1.0))
            elif act is Action.DOUBLE:
                hands.append((self._one_card(hand).total, 2.0))
            else:
                self._hit_out(self._one_card(hand), up, hands, 1.0)

    def _settle(self, up, hole, hands):
        h17 = self.rules.dealer_hits_soft17
        total, soft = (11, True) if up == 1 else (up, False)
        total, soft = add_to_total(total, soft, hole)
        while total < 17 or (total == 17 and soft and h17):
            card = self.draw()
            if card < 0:
                total = 22  # exhausted mid-hand counts as a bust
                break
            total, soft = add_to_total(total, soft, card)
        dealer_total = total if total <= 21 else 0
        win = 0.0
        for p_total, bet in hands:
            if p_total > 21:
                win -= bet
            elif p_total > dealer_total:
                win += bet
            elif p_total < dealer_total:
                win -= bet
        return win
