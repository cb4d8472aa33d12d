"""Player-option expectation tests: published values, oracles, invariants."""

import pytest

import oracles
from bjengine import Deck, Rules, new_deck
from bjengine.errors import DegenerateConditionError
from bjengine.hand import Hand, is_natural
from bjengine.strategy import (
    Action,
    best_action,
    double_ev,
    evaluate_hand,
    hit_ev,
    no_split_ev,
    split_aces_ev,
    split_ev,
    stand_ev,
)
from conftest import (
    EV_TABLE,
    KNOWN_EV_TABLE_DEFECTS,
    random_tiny_decks,
    rounded,
)

RULES = Rules(n_decks=2, das=True, rsa=True, rsp=True)


def table2_deck(c1, c2, up=6):
    deck = new_deck(2)
    for c in (c1, c2, up):
        deck.remove_card(c)
    return deck


def test_stand_bust_is_minus_one():
    deck = table2_deck(10, 10)
    assert stand_ev(Hand(22), 6, deck, RULES) == -1.0


def test_stand_published_rows():
    for (c1, c2), row in EV_TABLE.items():
        if is_natural(c1, c2):
            continue
        deck = table2_deck(c1, c2)
        hand = Hand(0).add(c1).add(c2)
        assert rounded(stand_ev(hand, 6, deck, RULES), 6) == \
            pytest.approx(row[0], abs=1.1e-6), (c1, c2)


def test_hit_and_double_published_rows():
    for (c1, c2), row in EV_TABLE.items():
        deck = table2_deck(c1, c2)
        hand = Hand(0).add(c1).add(c2)
        hit = hit_ev(hand, 6, deck, RULES)
        dd = double_ev(hand, 6, deck, RULES)
        tol_d = 1.1e-6 if abs(row[2]) < 1.0 else 1.1e-5
        assert hit == pytest.approx(row[1], abs=1.1e-6), (c1, c2)
        assert dd == pytest.approx(row[2], abs=tol_d), (c1, c2)


def test_double_is_twice_one_card_hit():
    for c1, c2 in ((2, 10), (1, 2), (5, 10)):
        deck = table2_deck(c1, c2)
        hand = Hand(0).add(c1).add(c2)
        assert double_ev(hand, 6, deck, RULES) == pytest.approx(
            2.0 * hit_ev(hand, 6, deck, RULES, rec=0), abs=1e-12)


def test_hit_depth_stabilizes():
    deck = new_deck(4)
    deck.remove_card(2)
    hand = Hand(10)
    v9 = hit_ev(hand, 2, deck, Rules(n_decks=4), rec=9)
    v2 = hit_ev(hand, 2, deck, Rules(n_decks=4), rec=2)
    assert abs(v9 - v2) <= 1e-15


def test_hit_monotone_in_depth():
    deck = table2_deck(1, 1)
    hand = Hand(12, True)
    values = [hit_ev(hand, 6, deck, RULES, rec=r) for r in range(14)]
    for lo, hi in zip(values, values[1:]):
        assert hi >= lo - 1e-12
    assert abs(values[13] - values[9]) <= 1e-15


def test_stand_beats_hit_on_21():
    deck = table2_deck(10, 10)
    hand = Hand(21, True)
    assert stand_ev(hand, 6, deck, RULES) >= hit_ev(hand, 6, deck, RULES)


def test_split_published_tens_and_aces_known_defects():
    # the published split digits for these two cells are irreproducible
    # from the published algorithm; the engine values are pinned against
    # the exhaustive oracle instead (see also the acceptance suite)
    deck = table2_deck(10, 10)
    got = split_ev(10, 6, deck, RULES)
    assert got == pytest.approx(KNOWN_EV_TABLE_DEFECTS[(10, 10)], abs=1e-12)
    deck = table2_deck(1, 1)
    got = split_aces_ev(6, deck, RULES)
    assert got == pytest.approx(KNOWN_EV_TABLE_DEFECTS[(1, 1)], abs=1e-12)


def test_split_aces_equals_oracle_tiny_decks():
    for counts in random_tiny_decks(31, 15, 3, 6):
        deck = Deck(counts)
        for up in (2, 6, 10):
            if up in (1, 10) and sum(counts) - counts[0 if up == 10 else 9] < 1:
                continue
            for rsa in (False, True):
                got = split_aces_ev(up, deck, RULES, rsa_active=rsa, rec=4)
                want = oracles.split_aces_ev(up, list(counts), sum(counts),
                                             rsa, False)
                assert got == pytest.approx(want, abs=1e-10), (counts, up, rsa)


def test_split_equals_oracle_tiny_decks():
    for counts in random_tiny_decks(32, 12, 3, 6):
        deck = Deck(counts)
        for pval in (2, 8):
            for rsp in (False, True):
                got = split_ev(pval, 6, deck, RULES, rsp_active=rsp, rec=3)
                want = oracles.split_ev(pval, 6, list(counts), sum(counts),
                                        True, rsp, 3, False)
                assert got == pytest.approx(want, abs=1e-10), (counts, pval, rsp)


def test_stand_hit_double_equal_oracle_tiny_decks():
    for counts in random_tiny_decks(33, 20, 3, 6):
        deck = Deck(counts)
        t = sum(counts)
        for up in (1, 5, 10):
            if up in (1, 10) and t - counts[0 if up == 10 else 9] < 1:
                continue
            for total, soft in ((8, False), (13, False), (17, True)):
                hand = Hand(total, soft)
                assert stand_ev(hand, up, deck, RULES) == pytest.approx(
                    oracles.stand_ev(total, up, list(counts), t, False),
                    abs=1e-10)
                assert hit_ev(hand, up, deck, RULES, rec=4) == pytest.approx(
                    oracles.hit_ev(total, soft, up, list(counts), t, 4, False),
                    abs=1e-10)
                assert double_ev(hand, up, deck, RULES) == pytest.approx(
                    oracles.double_ev(total, soft, up, list(counts), t, False),
                    abs=1e-10)


def test_no_split_branches():
    deck = table2_deck(10, 10)
    hand = Hand(21, True)
    assert no_split_ev(hand, 6, deck, RULES) == stand_ev(hand, 6, deck, RULES)
    hand = Hand(14)
    das_on = no_split_ev(hand, 6, deck, RULES)
    das_off = no_split_ev(hand, 6, deck, Rules(n_decks=2, das=False))
    assert das_on >= das_off  # max over a superset


def test_resplit_noop_without_matching_card():
    counts = [0, 2, 2, 0, 0, 0, 0, 0, 0, 2]  # no third eight anywhere
    deck = Deck(counts)
    a = split_ev(8, 6, deck, Rules(n_decks=1, rsp=True), rec=3)
    b = split_ev(8, 6, deck, Rules(n_decks=1, rsp=False), rec=3)
    assert a == b


def test_best_action_published_actions():
    for (c1, c2), row in EV_TABLE.items():
        if is_natural(c1, c2):
            continue
        deck = table2_deck(c1, c2)
        ev = best_action(c1, c2, 6, deck, RULES)
        assert ev.best.value == row[4], (c1, c2)


def test_best_action_rejects_natural():
    deck = table2_deck(1, 10)
    with pytest.raises(ValueError):
        best_action(1, 10, 6, deck, RULES)


def test_best_ev_matches_selected_action():
    deck = table2_deck(1, 7)
    ev = best_action(1, 7, 6, deck, RULES)
    assert ev.best is Action.DOUBLE
    assert ev.best_ev == ev.ev_double


def test_tie_break_is_deterministic():
    # equal values resolve in the fixed order stand > hit > double > split
    from bjengine.strategy import _pick

    ev = _pick(0.5, 0.5, 0.5, 0.5)
    assert ev.best is Action.STAND
    ev = _pick(0.1, 0.5, 0.5, None)
    assert ev.best is Action.HIT
    ev = _pick(0.1, 0.2, 0.5, 0.5)
    assert ev.best is Action.DOUBLE


def test_ev_bounds():
    for counts in random_tiny_decks(34, 10, 4, 7):
        deck = Deck(counts)
        t = sum(counts)
        for up in (2, 7):
            for total, soft in ((5, False), (16, False), (18, True)):
                hand = Hand(total, soft)
                assert -1.0 <= stand_ev(hand, up, deck, RULES) <= 1.0
                assert -1.0 - 1e-12 <= hit_ev(hand, up, deck, RULES, 3) <= 1.0
                assert -2.0 <= double_ev(hand, up, deck, RULES) <= 2.0
        if counts[1] >= 0:
            v = split_ev(2, up, deck, RULES, rec=2)
            assert -4.0 <= v <= 4.0


def test_evaluate_hand_three_cards_stand_hit_only():
    deck = new_deck(2)
    for c in (5, 4, 8, 6):
        deck.remove_card(c)
    ev = evaluate_hand([5, 4, 8], 6, deck, RULES)
    assert ev.ev_double is None and ev.ev_split is None
    assert ev.best in (Action.STAND, Action.HIT)


def test_degenerate_context_raises():
    deck = Deck([3] + [0] * 9)
    with pytest.raises(DegenerateConditionError):
        stand_ev(Hand(18), 10, deck, RULES)
