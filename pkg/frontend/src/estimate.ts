// Linear shoe-favorability estimate from service-provided removal-effect
// columns. The UI does no probability computation of its own: every
// coefficient comes from the service, and this module only combines them.
//
// Removing the m-th copy of a value reads that value's effect at the
// rank's effective shoe depth n0 - (m-1)/copies_per_deck, linearly
// interpolated between the available whole-deck columns and clamped at
// the ends of the table.

import { COPIES_PER_DECK, RemovalEffectsResponse } from "./types";

export type EffectsColumns = Record<number, RemovalEffectsResponse>;

export function interpolateEffect(
  columns: EffectsColumns,
  value: number,
  depth: number,
): number {
  const keys = Object.keys(columns).map(Number).sort((a, b) => a - b);
  if (keys.length === 0) {
    throw new Error("need at least one removal-effects column");
  }
  const first = keys[0]!;
  const last = keys[keys.length - 1]!;
  if (depth <= first) return columns[first]!.r[String(value)]!;
  if (depth >= last) return columns[last]!.r[String(value)]!;
  for (let i = 0; i + 1 < keys.length; i++) {
    const lo = keys[i]!;
    const hi = keys[i + 1]!;
    if (lo <= depth && depth <= hi) {
      const f = (depth - lo) / (hi - lo);
      return (1 - f) * columns[lo]!.r[String(value)]!
        + f * columns[hi]!.r[String(value)]!;
    }
  }
  throw new Error("unreachable");
}

/** Estimate of the expected win after `removed` cards left a fresh shoe. */
export function estimateExpectedWin(
  nDecks: number,
  removed: readonly number[],
  columns: EffectsColumns,
  baseEw: number,
): number {
  const copies = new Map<number, number>();
  let estimate = baseEw;
  for (const value of removed) {
    const m = copies.get(value) ?? 0;
    const perDeck = COPIES_PER_DECK[value - 1]!;
    estimate += interpolateEffect(columns, value, nDecks - m / perDeck);
    copies.set(value, m + 1);
  }
  return estimate;
}
