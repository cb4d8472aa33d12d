// Shoe session state: rules, every card seen in order, the current hand,
// and the running favorability estimate. All state changes go through
// recordCard/undo so exports stay lossless and undo restores the previous
// state exactly.

import { EffectsColumns, estimateExpectedWin } from "./estimate";
import { CardValue, Owner, Rules, standardCounts } from "./types";

export interface SeenCard {
  value: CardValue;
  owner: Owner;
}

export interface SessionExport {
  rules: Rules;
  initial_decks: number;
  seen_cards: SeenCard[];
  round_start: number;
  running_estimate: number;
}

export class SessionError extends Error {}

export class ShoeSession {
  readonly rules: Rules;
  readonly initialDecks: number;
  private seen: SeenCard[] = [];
  private estimates: number[];
  private roundStart = 0;
  private roundStartHistory: number[] = [];
  private readonly columns: EffectsColumns;
  private readonly baseEw: number;

  constructor(rules: Rules, initialDecks: number, columns: EffectsColumns) {
    if (initialDecks < 1) {
      throw new SessionError("a session needs at least one deck");
    }
    this.rules = rules;
    this.initialDecks = initialDecks;
    this.columns = columns;
    this.baseEw = columns[initialDecks]?.base_ew ?? 0;
    this.estimates = [this.baseEw];
  }

  get seenCards(): readonly SeenCard[] {
    return this.seen;
  }

  get runningEstimate(): number {
    return this.estimates[this.estimates.length - 1]!;
  }

  /** Player cards recorded since the current round started. */
  get currentHand(): CardValue[] {
    return this.seen.slice(this.roundStart)
      .filter((c) => c.owner === "player")
      .map((c) => c.value);
  }

  /** First dealer card of the current round. */
  get dealerUpcard(): CardValue | null {
    const card = this.seen.slice(this.roundStart)
      .find((c) => c.owner === "dealer");
    return card ? card.value : null;
  }

  /** Counts of cards not yet seen; the advice deck. */
  remainingCounts(): number[] {
    const counts = standardCounts(this.initialDecks);
    for (const c of this.seen) {
      counts[c.value - 1]!--;
    }
    return counts;
  }

  recordCard(value: CardValue, owner: Owner): void {
    if (!Number.isInteger(value) || value < 1 || value > 10) {
      throw new SessionError(`card value must be 1..10, got ${value}`);
    }
    if (this.remainingCounts()[value - 1]! < 1) {
      throw new SessionError(
        `every card of value ${value} has already been seen`);
    }
    this.seen.push({ value, owner });
    this.estimates.push(estimateExpectedWin(
      this.initialDecks,
      this.seen.map((c) => c.value),
      this.columns,
      this.baseEw,
    ));
  }

  /** Remove the most recent card and restore the previous estimate. */
  undo(): void {
    if (this.seen.length === 0) {
      throw new SessionError("nothing to undo");
    }
    if (this.roundStartHistory.length > 0
        && this.roundStart > this.seen.length - 1) {
      this.roundStart = this.roundStartHistory.pop()!;
    }
    this.seen.pop();
    this.estimates.pop();
  }

  /** Close the current hand; cards stay seen, hand labels reset. */
  nextRound(): void {
    this.roundStartHistory.push(this.roundStart);
    this.roundStart = this.seen.length;
  }

  toJSON(): SessionExport {
    return {
      rules: this.rules,
      initial_decks: this.initialDecks,
      seen_cards: this.seen.map((c) => ({ ...c })),
      round_start: this.roundStart,
      running_estimate: this.runningEstimate,
    };
  }

  static fromJSON(data: SessionExport, columns: EffectsColumns): ShoeSession {
    const session = new ShoeSession(data.rules, data.initial_decks, columns);
    for (const card of data.seen_cards) {
      session.recordCard(card.value, card.owner);
    }
    session.roundStart = data.round_start;
    return session;
  }
}
