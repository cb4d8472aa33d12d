"""Command-line front door.

Table commands print CSV truncated at the published precision (5 decimals
for dealer tables, 6 for hand expectations, 4 for the whole-game value);
a flag switches to full precision. API-style commands emit JSON at full
precision. Exit codes: 0 success, 2 usage error, 1 engine error.
"""

from __future__ import annotations

import json
import sys

import click

from . import dealer as dealer_mod
from . import expectation, simulator, strategy
from .deck import Deck, infinite_deck, new_deck
from .errors import EngineError
from .hand import Hand, is_natural
from .rules import Rules, parse_option_bits

UPCARD_ORDER = (2, 3, 4, 5, 6, 7, 8, 9, 10, 1)

TABLE_HANDS = ([(k, 10) for k in range(2, 11)]
               + [(1, k) for k in range(1, 11)])


def cut(x: float, digits: int) -> str:
    """Truncate toward zero at ``digits`` decimals (table presentation).

    A nudge of one part in 1e9 of the last digit absorbs float dust so
    that values representing exact decimals do not fall one digit short.
    """
    scale = 10 ** digits
    sign = "-" if x < 0 else ""
    scaled = int(abs(x) * scale + 1e-9)
    return f"{sign}{scaled // scale}.{scaled % scale:0{digits}d}"


def fmt_cell(x: float) -> str:
    return cut(x, 6)


def _parse_decks(text: str):
    if text in ("inf", "infinite"):
        return None
    try:
        n = int(text)
    except ValueError:
        raise click.UsageError(f"--decks must be a positive integer or 'inf', got {text!r}")
    if n < 1:
        raise click.UsageError("--decks must be at least 1")
    return n


def _build_rules(decks, bits: str, h17: bool) -> Rules:
    try:
        return parse_option_bits(bits, n_decks=decks, dealer_hits_soft17=h17)
    except ValueError as exc:
        raise click.UsageError(str(exc))


def _deck_for(rules: Rules) -> Deck:
    return infinite_deck() if rules.n_decks is None else new_deck(rules.n_decks)


def _load_json(text: str, what: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise click.UsageError(f"malformed JSON for {what}: {exc}")


class _EngineGroup(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except EngineError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)


@click.group(cls=_EngineGroup)
def main():
    """Exact blackjack expected-value engine."""


@main.command("dealer-table")
@click.option("--decks", default="1", help="shoe size, integer or 'inf'")
@click.option("--s17/--h17", "s17", default=True,
              help="dealer stands or hits on soft 17")
@click.option("--full-precision", is_flag=True, help="print full doubles")
def dealer_table(decks, s17, full_precision):
    """Dealer outcome distribution (no-natural measure) per upcard, CSV."""
    rules = _build_rules(_parse_decks(decks), "111", not s17)
    click.echo("upcard,17,18,19,20,21,bust")
    for d in UPCARD_ORDER:
        deck = _deck_for(rules)
        deck.remove_card(d)
        dist = dealer_mod.dealer_dist_no_natural(d, deck, rules)
        cells = [dist[k] for k in (17, 18, 19, 20, 21, 23)]
        if full_precision:
            row = ",".join(f"{v:.17g}" for v in cells)
        else:
            row = ",".join(cut(v, 5) for v in cells)
        click.echo(f"{d},{row}")


@main.command("ev-table")
@click.option("--decks", default="2")
@click.option("--up", type=int, default=6, help="dealer upcard 1..10")
@click.option("--rules", "bits", default="111", help="das/rsa/rsp bits")
@click.option("--s17/--h17", "s17", default=True)
@click.option("--depth", type=int, default=strategy.DEFAULT_HIT_DEPTH)
@click.option("--full-precision", is_flag=True)
def ev_table(decks, up, bits, s17, depth, full_precision):
    """Per-hand expectations for stand/hit/double/split plus the action."""
    if not 1 <= up <= 10:
        raise click.UsageError("--up must be 1..10")
    rules = _build_rules(_parse_decks(decks), bits, not s17)
    click.echo("hand,stand,hit,double,split,action")
    for c1, c2 in TABLE_HANDS:
        deck = _deck_for(rules)
        for c in (c1, c2, up):
            deck.remove_card(c)
        if is_natural(c1, c2):
            hand = Hand(0).add(c1).add(c2)
            ev_s = rules.natural_payout
            ev_h = strategy.hit_ev(hand, up, deck, rules, depth)
            ev_d = strategy.double_ev(hand, up, deck, rules)
            ev_p, act = None, "stand"
        else:
            ev = strategy.best_action(c1, c2, up, deck, rules, depth)
            ev_s, ev_h, ev_d, ev_p = ev.ev_stand, ev.ev_hit, ev.ev_double, ev.ev_split
            act = ev.best.value
        fmt = (lambda v: f"{v:.17g}") if full_precision else fmt_cell
        cells = [fmt(v) if v is not None else "" for v in (ev_s, ev_h, ev_d, ev_p)]
        click.echo(f"{c1}+{c2},{','.join(cells)},{act}")


@main.command("expected-win")
@click.option("--decks", default="1")
@click.option("--rules", "bits", default="111")
@click.option("--s17/--h17", "s17", default=True)
@click.option("--depth", type=int, default=strategy.DEFAULT_HIT_DEPTH)
@click.option("--natural-depletion/--no-natural-depletion", default=True,
              help="discard a natural-completing card in the no-natural branch")
def expected_win_cmd(decks, bits, s17, depth, natural_depletion):
    """Whole-game expected win, printed in percent to 4 decimals."""
    rules = _build_rules(_parse_decks(decks), bits, not s17)
    game = expectation.expected_win(_deck_for(rules), rules, depth,
                                    natural_depletion)
    click.echo(cut(game.ew * 100, 4))


@main.command("removal-effects")
@click.option("--decks", default="1")
@click.option("--rules", "bits", default="111")
@click.option("--s17/--h17", "s17", default=True)
@click.option("--depth", type=int, default=strategy.DEFAULT_HIT_DEPTH)
@click.option("--natural-depletion/--no-natural-depletion", default=True)
def removal_effects_cmd(decks, bits, s17, depth, natural_depletion):
    """Per-value removal effects in percent to 3 decimals, CSV."""
    n = _parse_decks(decks)
    if n is None:
        raise click.UsageError("removal effects need a finite deck")
    rules = _build_rules(n, bits, not s17)
    eff = expectation.removal_effects(new_deck(n), rules, depth,
                                      natural_depletion)
    click.echo("card,effect_pct")
    for value in range(1, 11):
        click.echo(f"{value},{eff.r[value] * 100:.3f}")


@main.command("estimate")
@click.option("--decks", default="2")
@click.option("--rules", "bits", default="111")
@click.option("--s17/--h17", "s17", default=True)
@click.option("--removed", required=True,
              help="comma-separated card values removed from the shoe")
@click.option("--exact", is_flag=True,
              help="also recompute the exact value on the depleted deck")
@click.option("--depth", type=int, default=strategy.DEFAULT_HIT_DEPTH)
def estimate_cmd(decks, bits, s17, removed, exact, depth):
    """Linear removal-effect estimate of E[W] after the given cards left."""
    n = _parse_decks(decks)
    if n is None:
        raise click.UsageError("the estimator needs a finite deck")
    rules = _build_rules(n, bits, not s17)
    try:
        cards = [int(c) for c in removed.split(",") if c.strip()]
    except ValueError:
        raise click.UsageError("--removed must be comma-separated integers")
    if any(not 1 <= c <= 10 for c in cards):
        raise click.UsageError("removed card values must be 1..10")
    shoe = new_deck(n)
    columns = {}
    for col in sorted({n, max(n - 1, 1)}):
        columns[col] = expectation.removal_effects(new_deck(col), rules, depth)
    base = columns[n].base_ew
    est = expectation.estimate_expected_win(shoe, cards, columns, base)
    out = {"estimate": est, "base_ew": base}
    if exact:
        depleted = new_deck(n)
        for c in cards:
            depleted.remove_card(c)
        out["exact"] = expectation.expected_win(depleted, rules, depth).ew
    click.echo(json.dumps(out))


@main.command("advise")
@click.option("--deck", "deck_json", required=True, help="deck JSON")
@click.option("--rules", "rules_json", default="{}", help="rules JSON")
@click.option("--up", type=int, required=True)
@click.option("--cards", required=True, help="comma-separated player cards")
@click.option("--depth", type=int, default=strategy.DEFAULT_HIT_DEPTH)
def advise_cmd(deck_json, rules_json, up, cards, depth):
    """Evaluate a concrete situation; prints an evaluation as JSON."""
    deck_obj = _load_json(deck_json, "--deck")
    rules_obj = _load_json(rules_json, "--rules")
    try:
        deck = Deck.from_json(deck_obj)
        rules = Rules.from_json(rules_obj)
    except (ValueError, TypeError) as exc:
        raise click.UsageError(str(exc))
    try:
        card_list = [int(c) for c in cards.split(",") if c.strip()]
    except ValueError:
        raise click.UsageError("--cards must be comma-separated integers")
    if len(card_list) < 2 or any(not 1 <= c <= 10 for c in card_list):
        raise click.UsageError("need at least two player cards with values 1..10")
    if not 1 <= up <= 10:
        raise click.UsageError("--up must be 1..10")
    if len(card_list) == 2 and is_natural(*card_list):
        click.echo(json.dumps({"is_player_natural": True, "payout": 1.5}))
        return
    ev = strategy.evaluate_hand(card_list, up, deck, rules, depth)
    click.echo(json.dumps({"is_player_natural": False,
                           "evaluation": ev.to_json()}))


@main.command("simulate")
@click.argument("kind", type=click.Choice(["dealer", "round"]))
@click.option("--decks", default="1")
@click.option("--rules", "bits", default="111")
@click.option("--s17/--h17", "s17", default=True)
@click.option("--up", type=int, default=6, help="upcard for dealer simulation")
@click.option("--n", type=int, required=True)
@click.option("--seed", type=int, required=True)
@click.option("--shards", type=int, default=1)
def simulate_cmd(kind, decks, bits, s17, up, n, seed, shards):
    """Monte Carlo check; emits a report as JSON."""
    nd = _parse_decks(decks)
    if nd is None:
        raise click.UsageError("simulation needs a finite deck")
    rules = _build_rules(nd, bits, not s17)
    if kind == "dealer":
        deck = new_deck(nd)
        deck.remove_card(up)
        report = simulator.simulate_dealer(up, deck, rules, n, seed, shards)
    else:
        report = simulator.simulate_round(new_deck(nd), rules, n, seed, shards)
    click.echo(json.dumps(report.to_json()))


@main.command("serve")
@click.option("--port", type=int, default=8000)
@click.option("--host", default="127.0.0.1")
def serve_cmd(port, host):
    """Run the JSON advisor service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
