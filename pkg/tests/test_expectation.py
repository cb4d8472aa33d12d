"""Whole-game expectation, removal effects, and estimator tests."""

import pytest

import oracles
from bjengine import Deck, Rules, infinite_deck, new_deck
from bjengine.expectation import (
    RemovalEffects,
    estimate_expected_win,
    expected_win,
    expected_win_upcard,
    pair_prob,
    removal_effects,
)
from bjengine.rules import parse_option_bits
from conftest import EXPECTED_WIN_TABLE, random_tiny_decks

RULES111 = Rules(n_decks=2, das=True, rsa=True, rsp=True)


def test_pair_prob_normalizes():
    for up in (1, 6, 10):
        deck = new_deck(1)
        deck.remove_card(up)
        total = sum(pair_prob(i, j, up, deck)
                    for i in range(1, 11) for j in range(1, 11))
        assert total == pytest.approx(1.0, abs=1e-12)


def test_pair_prob_plain_sequential_when_unconditioned():
    deck = new_deck(1)
    deck.remove_card(7)
    assert pair_prob(1, 2, 7, deck) == pytest.approx(
        (4 / 51) * (4 / 50), abs=1e-15)


def test_pair_prob_matches_triple_enumeration():
    for counts in random_tiny_decks(41, 25, 3, 8):
        deck = Deck(counts)
        t = sum(counts)
        for up in (1, 10):
            excl = 1 if up == 10 else 10
            if t - counts[excl - 1] < 1:
                continue
            for i, j in ((1, 2), (10, 10), (1, 1), (5, 10)):
                got = pair_prob(i, j, up, deck)
                want = oracles.pair_q(i, j, up, list(counts), t)
                assert got == pytest.approx(want, abs=1e-12), (counts, up, i, j)


def test_infinite_deck_published_row_spot():
    for bits in ("000", "111"):
        rules = parse_option_bits(bits, n_decks=None)
        got = expected_win(infinite_deck(), rules).ew * 100
        assert got == pytest.approx(EXPECTED_WIN_TABLE[(None, bits)], abs=2.5e-4)


def test_depletion_modes_agree_on_infinite_deck():
    rules = parse_option_bits("101", n_decks=None)
    a = expected_win(infinite_deck(), rules, natural_depletion=True).ew
    b = expected_win(infinite_deck(), rules, natural_depletion=False).ew
    assert a == pytest.approx(b, abs=1e-15)


def test_published_finite_rows_spot():
    for key in ((1, "111"), (2, "111")):
        n, bits = key
        rules = parse_option_bits(bits, n_decks=n)
        got = expected_win(new_deck(n), rules).ew * 100
        assert got == pytest.approx(EXPECTED_WIN_TABLE[key], abs=1.5e-4)


def test_exact_mode_matches_full_deal_oracle():
    for counts in random_tiny_decks(42, 12, 5, 8):
        rules = Rules(n_decks=1, das=True, rsa=False, rsp=True)
        got = expected_win(Deck(counts), rules, rec=5,
                           natural_depletion=False).ew
        want = oracles.expected_win(list(counts), rules, rec=5,
                                    natural_depletion=False)
        assert got == pytest.approx(want, abs=1e-10), counts


def test_depletion_mode_matches_its_oracle():
    for counts in random_tiny_decks(43, 12, 5, 8):
        rules = Rules(n_decks=1, das=False, rsa=True, rsp=False)
        got = expected_win(Deck(counts), rules, rec=5,
                           natural_depletion=True).ew
        want = oracles.expected_win(list(counts), rules, rec=5,
                                    natural_depletion=True)
        assert got == pytest.approx(want, abs=1e-10), counts


def test_per_upcard_composition():
    counts = [2, 1, 2, 1, 0, 2, 1, 0, 1, 4]
    deck = Deck(counts)
    rules = Rules(n_decks=1)
    game = expected_win(deck, rules, rec=3)
    acc = 0.0
    for d, w in game.per_upcard.items():
        acc += (counts[d - 1] / sum(counts)) * w
    assert acc == pytest.approx(game.ew, abs=1e-12)
    # deck unchanged by the sweep
    assert deck.counts == counts


def test_expected_win_upcard_middle_vs_ten():
    # middle upcards have no dealer-natural term; ace/ten do
    deck = new_deck(1)
    deck.remove_card(6)
    v6 = expected_win_upcard(6, deck, Rules(n_decks=1), rec=3)
    deck.add_card(6)
    deck.remove_card(10)
    v10 = expected_win_upcard(10, deck, Rules(n_decks=1), rec=3)
    assert v6 > v10  # a ten showing is far worse for the player


def test_removal_effects_reproducible_from_expected_win():
    counts = [2, 2, 2, 2, 2, 2, 2, 2, 2, 6]
    deck = Deck(counts)
    rules = Rules(n_decks=1)
    eff = removal_effects(deck, rules, rec=3)
    assert eff.base_ew == pytest.approx(
        expected_win(deck, rules, rec=3).ew, abs=0.0)
    deck.remove_card(5)
    direct = expected_win(deck, rules, rec=3).ew - eff.base_ew
    deck.add_card(5)
    assert eff.r[5] == pytest.approx(direct, abs=0.0)
    assert deck.counts == counts


def test_removal_effects_needs_finite_deck():
    with pytest.raises(ValueError):
        removal_effects(infinite_deck(), Rules(n_decks=None))


def test_estimate_empty_removal_is_base():
    eff = RemovalEffects(r={v: 0.001 for v in range(1, 11)}, base_ew=-0.005)
    assert estimate_expected_win(new_deck(2), [], {2: eff}, -0.005) == -0.005


def test_estimate_single_column_constant():
    eff = RemovalEffects(r={v: 0.001 for v in range(1, 11)}, base_ew=0.0)
    got = estimate_expected_win(new_deck(2), [5, 5, 5], eff, 0.0)
    assert got == pytest.approx(0.003, abs=1e-15)


def test_estimate_interpolates_between_columns():
    lo = RemovalEffects(r={v: 0.002 for v in range(1, 11)}, base_ew=0.0)
    hi = RemovalEffects(r={v: 0.001 for v in range(1, 11)}, base_ew=0.0)
    # second copy of a non-ten reads depth 2 - 1/4 = 1.75
    got = estimate_expected_win(new_deck(2), [5, 5], {1: lo, 2: hi}, 0.0)
    assert got == pytest.approx(0.001 + (0.25 * 0.002 + 0.75 * 0.001),
                                abs=1e-15)
    # tens deplete sixteen to the deck
    got = estimate_expected_win(new_deck(2), [10, 10], {1: lo, 2: hi}, 0.0)
    assert got == pytest.approx(0.001 + (0.001 + (0.002 - 0.001) / 16),
                                abs=1e-15)


def test_estimate_clamps_outside_columns():
    hi = RemovalEffects(r={v: 0.001 for v in range(1, 11)}, base_ew=0.0)
    got = estimate_expected_win(new_deck(1), [2] * 4, {2: hi}, 0.0)
    assert got == pytest.approx(0.004, abs=1e-15)
