"""Compiled numeric core shared by the dealer, strategy, and expectation layers.

The dealer's final-total distribution for an arbitrary deck is evaluated
from a precomputed table instead of walking the draw tree per deck. Every
completed dealer hand is a multiset of drawn card values; because draws
without replacement are exchangeable, each ordering of the same multiset
has the same probability, and whether an ordering is a legal dealer hand
(every prefix still drawing, the final state standing) does not depend on
the deck at all. So per upcard we enumerate all legal orderings once with
unlimited card supply and collapse them into rows

    (multiset m, final-total class, number of legal orderings)

after which the distribution for a concrete deck with counts a and size t
is a sum of n_valid * prod_k ff(a_k, m_k) / ff(t, len(m)) over the rows,
where ff is the falling factorial. Ranks the deck cannot supply zero out
automatically, and mass from decks too small for the dealer to finish
lands in the bust bucket, which is computed as the remaining probability.

The player-side expectations (stand, hit, double, split) are evaluated
here as well, with two shared memo tables keyed by a packed deck
fingerprint: one for raw dealer distributions and one for hit values.
"""

from __future__ import annotations

import numpy as np
from numba import boolean, float64, int64, njit
from numba.core import types
from numba.typed import Dict

from .hand import add_to_total

# Packed deck-key steps, mirrored from deck.Deck.
KEY_STEPS = tuple(1 << (6 * k) for k in range(9)) + (1 << 54,)
INFINITE_KEY = -1

# Base for packing a drawn-card multiset during table construction.
_M_BASE = 28
_M_STEPS = tuple(_M_BASE ** k for k in range(10))

_RAW_KEY_T = types.UniTuple(types.int64, 2)
_RAW_VAL_T = types.UniTuple(types.float64, 5)
_MEMO_KEY_T = types.UniTuple(types.int64, 2)


@njit(cache=True)
def _add(total, soft, card):
    if card == 1 and not soft and total + 11 <= 21:
        return total + 11, True
    total += card
    if soft and total > 21:
        return total - 10, False
    return total, soft


@njit(cache=True)
def _dealer_stands(total, soft, hits_soft17):
    if total >= 18:
        return True
    if total == 17:
        return not (hits_soft17 and soft)
    return False


@njit(cache=True)
def _enumerate_hands(total, soft, hits_soft17, mkey, depth, out):
    """DFS over dealer draw orderings with unlimited card supply.

    Records each stood hand's drawn multiset; busts and the start state
    itself are never recorded (bust mass is recovered as a remainder).
    """
    if total > 21:
        return
    if depth > 0 and _dealer_stands(total, soft, hits_soft17):
        cls = total - 17
        if mkey in out:
            prev = out[mkey]
            if prev & 7 != cls:
                raise RuntimeError("dealer hand class depends on draw order")
            out[mkey] = prev + 8
        else:
            out[mkey] = 8 + cls
        return
    for card in range(1, 11):
        nt, ns = _add(total, soft, card)
        _enumerate_hands(nt, ns, hits_soft17, mkey + _M_STEPS[card - 1], depth + 1, out)


@njit(cache=True)
def _raw_dist(counts, t, infinite, cls, nvalid, length, ptr, ranks, ms, maxm, maxlen):
    """Mass landing on dealer totals 17..21 (naturals still inside 21)."""
    out = np.zeros(5)
    if infinite:
        pw = np.empty((10, maxm + 1))
        for r in range(10):
            p = 4.0 / 13.0 if r == 9 else 1.0 / 13.0
            pw[r, 0] = 1.0
            for j in range(1, maxm + 1):
                pw[r, j] = pw[r, j - 1] * p
        for i in range(cls.shape[0]):
            prod = nvalid[i]
            for j in range(ptr[i], ptr[i + 1]):
                prod *= pw[ranks[j], ms[j]]
            out[cls[i]] += prod
        return out[0], out[1], out[2], out[3], out[4]
    ff = np.empty((10, maxm + 1))
    for r in range(10):
        ff[r, 0] = 1.0
        a = counts[r]
        for j in range(1, maxm + 1):
            v = ff[r, j - 1] * (a - j + 1)
            ff[r, j] = v if v > 0.0 else 0.0
    tf = np.empty(maxlen + 1)
    tf[0] = 1.0
    for j in range(1, maxlen + 1):
        v = tf[j - 1] * (t - j + 1)
        tf[j] = v if v > 0.0 else 0.0
    for i in range(cls.shape[0]):
        denom = tf[length[i]]
        if denom <= 0.0:
            continue
        prod = nvalid[i]
        for j in range(ptr[i], ptr[i + 1]):
            prod *= ff[ranks[j], ms[j]]
            if prod == 0.0:
                break
        if prod > 0.0:
            out[cls[i]] += prod / denom
    return out[0], out[1], out[2], out[3], out[4]


@njit(cache=True)
def _raw_dist_cached(raw_cache, key, counts, t, infinite, d, h17,
                     cls, nvalid, length, ptr, ranks, ms, maxm, maxlen):
    ck = (key, d + (16 if h17 else 0))
    if ck in raw_cache:
        return raw_cache[ck]
    res = _raw_dist(counts, t, infinite, cls, nvalid, length, ptr, ranks, ms,
                    maxm, maxlen)
    raw_cache[ck] = res
    return res


@njit(cache=True)
def _q_dist(raw_cache, key, counts, t, infinite, d, h17,
            cls, nvalid, length, ptr, ranks, ms, maxm, maxlen):
    """Dealer distribution conditioned on no natural: (17..21, bust)."""
    raw = _raw_dist_cached(raw_cache, key, counts, t, infinite, d, h17,
                           cls, nvalid, length, ptr, ranks, ms, maxm, maxlen)
    if d == 10 or d == 1:
        nat_rank = 1 if d == 10 else 10
        if infinite:
            p_nat = 1.0 / 13.0 if nat_rank == 1 else 4.0 / 13.0
        elif t > 0:
            p_nat = counts[nat_rank - 1] / t
        else:
            p_nat = 0.0
        if p_nat >= 1.0:
            # degenerate conditioning; callers guard before reaching here
            return 0.0, 0.0, 0.0, 0.0, 0.0, 1.0
        z = 1.0 - p_nat
        q21 = (raw[4] - p_nat) / z
        if q21 < 0.0:
            q21 = 0.0
        q17, q18, q19, q20 = raw[0] / z, raw[1] / z, raw[2] / z, raw[3] / z
    else:
        q17, q18, q19, q20, q21 = raw
    bust = 1.0 - (q17 + q18 + q19 + q20 + q21)
    if bust < 0.0:
        bust = 0.0
    return q17, q18, q19, q20, q21, bust


@njit(cache=True)
def _stand_from_q(total, q):
    if total > 21:
        return -1.0
    if total < 17:
        return 2.0 * q[5] - 1.0
    s = 1.0 - q[total - 17]
    for j in range(total - 16, 5):
        s -= 2.0 * q[j]
    return s


@njit(cache=True)
def _card_q(counts, t, infinite, k, d):
    """Next-card probability conditioned on the dealer holding no natural."""
    if infinite:
        return 4.0 / 13.0 if k == 10 else 1.0 / 13.0
    a_k = counts[k - 1]
    if a_k == 0:
        return 0.0
    if d == 10:
        a_x = counts[0]
        if k == 1:
            return a_k / (t - 1.0)
        return a_k / (t - 1.0) * (t - a_x - 1.0) / (t - a_x)
    if d == 1:
        a_x = counts[9]
        if k == 10:
            return a_k / (t - 1.0)
        return a_k / (t - 1.0) * (t - a_x - 1.0) / (t - a_x)
    return a_k / t


@njit(cache=True)
def _stand_ev(total, raw_cache, key, counts, t, infinite, d, h17,
              cls, nvalid, length, ptr, ranks, ms, maxm, maxlen):
    if total > 21:
        return -1.0
    q = _q_dist(raw_cache, key, counts, t, infinite, d, h17,
                cls, nvalid, length, ptr, ranks, ms, maxm, maxlen)
    return _stand_from_q(total, q)


@njit(cache=True)
def _hit_ev(total, soft, rec, d, counts, t, key, infinite, h17,
            need, raw_cache, memo,
            cls, nvalid, length, ptr, ranks, ms, maxm, maxlen):
    # depth budgets beyond the longest useful draw chain collapse onto one
    # memo entry; values are identical from that depth on
    cap = need[1 if soft else 0, total if total < 32 else 31]
    r = rec if rec < cap else cap
    meta = total + ((1 if soft else 0) << 6) + (r << 7) + (d << 12) + ((1 if h17 else 0) << 16)
    ck = (key, meta)
    if ck in memo:
        return memo[ck]
    if (not infinite) and t < 2 and (d == 1 or d == 10):
        memo[ck] = 0.0
        return 0.0
    acc = 0.0
    for k in range(1, 11):
        p = _card_q(counts, t, infinite, k, d)
        if p <= 0.0:
            continue
        nt, ns = _add(total, soft, k)
        if infinite:
            nkey, t2 = key, t
        else:
            counts[k - 1] -= 1
            nkey, t2 = key - KEY_STEPS[k - 1], t - 1
        v = _stand_ev(nt, raw_cache, nkey, counts, t2, infinite, d, h17,
                      cls, nvalid, length, ptr, ranks, ms, maxm, maxlen)
        if nt < 21 and r > 0:
            hv = _hit_ev(nt, ns, r - 1, d, counts, t2, nkey, infinite, h17,
                         need, raw_cache, memo,
                         cls, nvalid, length, ptr, ranks, ms, maxm, maxlen)
            if hv > v:
                v = hv
        if not infinite:
            counts[k - 1] += 1
        acc += p * v
    memo[ck] = acc
    return acc


@njit(cache=True)
def _double_ev(total, soft, d, counts, t, key, infinite, h17, raw_cache,
               cls, nvalid, length, ptr, ranks, ms, maxm, maxlen):
    if (not infinite) and t < 2 and (d == 1 or d == 10):
        return 0.0
    acc = 0.0
    for k in range(1, 11):
        p = _card_q(counts, t, infinite, k, d)
        if p <= 0.0:
            continue
        nt, _ = _add(total, soft, k)
        if infinite:
            nkey, t2 = key, t
        else:
            counts[k - 1] -= 1
            nkey, t2 = key - KEY_STEPS[k - 1], t - 1
        acc += p * _stand_ev(nt, raw_cache, nkey, counts, t2, infinite, d, h17,
                             cls, nvalid, length, ptr, ranks, ms, maxm, maxlen)
        if not infinite:
            counts[k - 1] += 1
    return 2.0 * acc


@njit(cache=True)
def _no_split_ev(total, soft, d, counts, t, key, infinite, h17, das, rec,
                 need, raw_cache, memo,
                 cls, nvalid, length, ptr, ranks, ms, maxm, maxlen):
    best = _stand_ev(total, raw_cache, key, counts, t, infinite, d, h17,
                     cls, nvalid, length, ptr, ranks, ms, maxm, maxlen)
    if total >= 21:
        return best
    hv = _hit_ev(total, soft, rec, d, counts, t, key, infinite, h17,
                 need, raw_cache, memo,
                 cls, nvalid, length, ptr, ranks, ms, maxm, maxlen)
    if hv > best:
        best = hv
    if das:
        dv = _double_ev(total, soft, d, counts, t, key, infinite, h17, raw_cache,
                        cls, nvalid, length, ptr, ranks, ms, maxm, maxlen)
        if dv > best:
            best = dv
    return best


@njit(cache=True)
def _split_once_ev(pval, d, counts, t, key, infinite, h17, das, rec,
                   need, raw_cache, memo,
                   cls, nvalid, length, ptr, ranks, ms, maxm, maxlen):
    """Split a non-ace pair with no further re-split allowed."""
    if (not infinite) and t < 2 and (d == 1 or d == 10):
        return 0.0
    acc = 0.0
    for k in range(1, 11):
        p = _card_q(counts, t, infinite, k, d)
        if p <= 0.0:
            continue
        nt, ns = _add(pval, False, k)
        if infinite:
            nkey, t2 = key, t
        else:
            counts[k - 1] -= 1
            nkey, t2 = key - KEY_STEPS[k - 1], t - 1
        acc += p * _no_split_ev(nt, ns, d, counts, t2, nkey, infinite, h17,
                                das, rec, need, raw_cache, memo,
                                cls, nvalid, length, ptr, ranks, ms, maxm, maxlen)
        if not infinite:
            counts[k - 1] += 1
    return 2.0 * acc


@njit(cache=True)
def _split_ev(pval, d, counts, t, key, infinite, h17, das, rsp, rec,
              need, raw_cache, memo,
              cls, nvalid, length, ptr, ranks, ms, maxm, maxlen):
    """Split a non-ace pair: twice the value of one post-split hand.

    When re-splitting is active and the drawn card pairs up again, the
    better of playing the hand and splitting once more is taken; the
    deeper split cannot re-split, so one hand yields at most four.
    """
    if not rsp:
        return _split_once_ev(pval, d, counts, t, key, infinite, h17, das,
                              rec, need, raw_cache, memo,
                              cls, nvalid, length, ptr, ranks, ms, maxm, maxlen)
    if (not infinite) and t < 2 and (d == 1 or d == 10):
        return 0.0
    acc = 0.0
    for k in range(1, 11):
        p = _card_q(counts, t, infinite, k, d)
        if p <= 0.0:
            continue
        nt, ns = _add(pval, False, k)
        if infinite:
            nkey, t2 = key, t
        else:
            counts[k - 1] -= 1
            nkey, t2 = key - KEY_STEPS[k - 1], t - 1
        v = _no_split_ev(nt, ns, d, counts, t2, nkey, infinite, h17, das, rec,
                         need, raw_cache, memo,
                         cls, nvalid, length, ptr, ranks, ms, maxm, maxlen)
        if k == pval:
            rv = _split_once_ev(pval, d, counts, t2, nkey, infinite, h17, das,
                                rec, need, raw_cache, memo,
                                cls, nvalid, length, ptr, ranks, ms, maxm, maxlen)
            if rv > v:
                v = rv
        if not infinite:
            counts[k - 1] += 1
        acc += p * v
    return 2.0 * acc


@njit(cache=True)
def _split_aces_once_ev(d, counts, t, key, infinite, h17, raw_cache,
                        cls, nvalid, length, ptr, ranks, ms, maxm, maxlen):
    """Split aces with no re-split: each hand draws one card and stands."""
    if (not infinite) and t < 2 and (d == 1 or d == 10):
        return 0.0
    acc = 0.0
    for k in range(1, 11):
        p = _card_q(counts, t, infinite, k, d)
        if p <= 0.0:
            continue
        nt, _ = _add(11, True, k)
        if infinite:
            nkey, t2 = key, t
        else:
            counts[k - 1] -= 1
            nkey, t2 = key - KEY_STEPS[k - 1], t - 1
        acc += p * _stand_ev(nt, raw_cache, nkey, counts, t2, infinite, d, h17,
                             cls, nvalid, length, ptr, ranks, ms, maxm, maxlen)
        if not infinite:
            counts[k - 1] += 1
    return 2.0 * acc


@njit(cache=True)
def _split_aces_ev(d, counts, t, key, infinite, h17, rsa,
                   need, raw_cache, memo,
                   cls, nvalid, length, ptr, ranks, ms, maxm, maxlen):
    """Split aces: each hand draws exactly one card.

    With re-splitting active, a drawn ace may be split once more per
    branch; that deeper split runs with the option off.
    """
    if not rsa:
        return _split_aces_once_ev(d, counts, t, key, infinite, h17, raw_cache,
                                   cls, nvalid, length, ptr, ranks, ms,
                                   maxm, maxlen)
    if (not infinite) and t < 2 and (d == 1 or d == 10):
        return 0.0
    acc = 0.0
    for k in range(1, 11):
        p = _card_q(counts, t, infinite, k, d)
        if p <= 0.0:
            continue
        nt, _ = _add(11, True, k)
        if infinite:
            nkey, t2 = key, t
        else:
            counts[k - 1] -= 1
            nkey, t2 = key - KEY_STEPS[k - 1], t - 1
        v = _stand_ev(nt, raw_cache, nkey, counts, t2, infinite, d, h17,
                      cls, nvalid, length, ptr, ranks, ms, maxm, maxlen)
        if k == 1:
            rv = _split_aces_once_ev(d, counts, t2, nkey, infinite, h17,
                                     raw_cache,
                                     cls, nvalid, length, ptr, ranks, ms,
                                     maxm, maxlen)
            if rv > v:
                v = rv
        if not infinite:
            counts[k - 1] += 1
        acc += p * v
    return 2.0 * acc


# --------------------------------------------------------------------------
# Python-side table construction and engine state


def _need_depths() -> np.ndarray:
    """Longest useful hit-recursion depth per (soft, total) player state."""
    memo: dict[tuple[int, bool], int] = {}

    def need(total: int, soft: bool) -> int:
        k = (total, soft)
        if k in memo:
            return memo[k]
        best = 0
        for card in range(1, 11):
            nt, ns = add_to_total(total, soft, card)
            if nt < 21:
                d = need(nt, ns) + 1
                if d > best:
                    best = d
        memo[k] = best
        return best

    arr = np.zeros((2, 32), dtype=np.int64)
    for total in range(32):
        for soft in (0, 1):
            arr[soft, total] = need(total, bool(soft)) if total <= 21 else 0
    return arr


class DealerTable:
    """Per-upcard multiset rows for one soft-17 flavor."""

    __slots__ = ("cls", "nvalid", "length", "ptr", "ranks", "ms", "maxm", "maxlen")

    def __init__(self, packed: dict):
        keys = sorted(packed.keys())
        n = len(keys)
        self.cls = np.empty(n, dtype=np.int64)
        self.nvalid = np.empty(n, dtype=np.float64)
        self.length = np.empty(n, dtype=np.int64)
        self.ptr = np.zeros(n + 1, dtype=np.int64)
        ranks, ms = [], []
        for i, mkey in enumerate(keys):
            val = packed[mkey]
            self.cls[i] = val & 7
            self.nvalid[i] = float(val >> 3)
            length = 0
            for rank in range(10):
                m = (mkey // _M_STEPS[rank]) % _M_BASE
                if m:
                    ranks.append(rank)
                    ms.append(m)
                    length += m
            self.length[i] = length
            self.ptr[i + 1] = len(ranks)
        self.ranks = np.array(ranks, dtype=np.int64)
        self.ms = np.array(ms, dtype=np.int64)
        self.maxm = int(self.ms.max()) if len(ms) else 0
        self.maxlen = int(self.length.max()) if n else 0

    def args(self):
        return (self.cls, self.nvalid, self.length, self.ptr, self.ranks,
                self.ms, self.maxm, self.maxlen)


def _build_table(upcard: int, hits_soft17: bool) -> DealerTable:
    start_total, start_soft = (11, True) if upcard == 1 else (upcard, False)
    out = Dict.empty(types.int64, types.int64)
    _enumerate_hands(start_total, start_soft, hits_soft17, 0, 0, out)
    return DealerTable(dict(out))


class Engine:
    """Lazy dealer tables plus the shared memoization dictionaries."""

    def __init__(self):
        self._tables: dict[tuple[int, bool], DealerTable] = {}
        self.need = _need_depths()
        self.clear_caches()

    def clear_caches(self) -> None:
        self.raw_cache = Dict.empty(_RAW_KEY_T, _RAW_VAL_T)
        self.memo = Dict.empty(_MEMO_KEY_T, types.float64)

    def table(self, upcard: int, hits_soft17: bool) -> DealerTable:
        k = (upcard, hits_soft17)
        tab = self._tables.get(k)
        if tab is None:
            tab = self._tables[k] = _build_table(upcard, hits_soft17)
        return tab


ENGINE = Engine()


def clear_caches() -> None:
    """Drop all memoized dealer distributions and hit values."""
    ENGINE.clear_caches()


def _deck_args(deck):
    if deck.infinite:
        return np.zeros(10, dtype=np.int64), 0, INFINITE_KEY, True
    return np.array(deck.counts, dtype=np.int64), deck.total, deck.key, False


def raw_dealer_dist(upcard: int, deck, hits_soft17: bool):
    """Unconditioned mass on dealer totals 17..21, naturals inside 21."""
    counts, t, key, infinite = _deck_args(deck)
    tab = ENGINE.table(upcard, hits_soft17)
    return _raw_dist_cached(ENGINE.raw_cache, key, counts, t, infinite,
                            upcard, hits_soft17, *tab.args())


def q_dealer_dist(upcard: int, deck, hits_soft17: bool):
    """No-natural dealer distribution as (q17..q21, bust)."""
    counts, t, key, infinite = _deck_args(deck)
    tab = ENGINE.table(upcard, hits_soft17)
    return _q_dist(ENGINE.raw_cache, key, counts, t, infinite,
                   upcard, hits_soft17, *tab.args())


def stand_ev(total: int, upcard: int, deck, hits_soft17: bool) -> float:
    counts, t, key, infinite = _deck_args(deck)
    tab = ENGINE.table(upcard, hits_soft17)
    return _stand_ev(total, ENGINE.raw_cache, key, counts, t, infinite,
                     upcard, hits_soft17, *tab.args())


def hit_ev(total: int, soft: bool, rec: int, upcard: int, deck,
           hits_soft17: bool) -> float:
    counts, t, key, infinite = _deck_args(deck)
    tab = ENGINE.table(upcard, hits_soft17)
    return _hit_ev(total, soft, rec, upcard, counts, t, key, infinite,
                   hits_soft17, ENGINE.need, ENGINE.raw_cache, ENGINE.memo,
                   *tab.args())


def double_ev(total: int, soft: bool, upcard: int, deck,
              hits_soft17: bool) -> float:
    counts, t, key, infinite = _deck_args(deck)
    tab = ENGINE.table(upcard, hits_soft17)
    return _double_ev(total, soft, upcard, counts, t, key, infinite,
                      hits_soft17, ENGINE.raw_cache, *tab.args())


def no_split_ev(total: int, soft: bool, upcard: int, deck, hits_soft17: bool,
                das: bool, rec: int) -> float:
    counts, t, key, infinite = _deck_args(deck)
    tab = ENGINE.table(upcard, hits_soft17)
    return _no_split_ev(total, soft, upcard, counts, t, key, infinite,
                        hits_soft17, das, rec, ENGINE.need, ENGINE.raw_cache,
                        ENGINE.memo, *tab.args())


def split_ev(pair_value: int, upcard: int, deck, hits_soft17: bool,
             das: bool, rsp: bool, rec: int) -> float:
    counts, t, key, infinite = _deck_args(deck)
    tab = ENGINE.table(upcard, hits_soft17)
    return _split_ev(pair_value, upcard, counts, t, key, infinite,
                     hits_soft17, das, rsp, rec, ENGINE.need,
                     ENGINE.raw_cache, ENGINE.memo, *tab.args())


def split_aces_ev(upcard: int, deck, hits_soft17: bool, rsa: bool,
                  rec: int) -> float:
    counts, t, key, infinite = _deck_args(deck)
    tab = ENGINE.table(upcard, hits_soft17)
    return _split_aces_ev(upcard, counts, t, key, infinite, hits_soft17, rsa,
                          ENGINE.need, ENGINE.raw_cache, ENGINE.memo,
                          *tab.args())


def warm_up() -> None:
    """Force JIT compilation and table construction for interactive use."""
    from .deck import new_deck

    deck = new_deck(1)
    for upcard in (6, 10, 1):
        deck.remove_card(upcard)
        hit_ev(12, False, 1, upcard, deck, False)
        deck.add_card(upcard)
