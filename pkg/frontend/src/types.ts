// Wire types of the advisor service. Card values run 1..10 with 1 the ace
// and 10 any ten-valued card; deck counts are ordered ace first.

export type CardValue = number;

export type Owner = "player" | "dealer" | "other";

export interface Rules {
  n_decks: number | null;
  dealer_hits_soft17: boolean;
  das: boolean;
  rsa: boolean;
  rsp: boolean;
}

export interface DeckJson {
  mode: "finite" | "infinite";
  counts?: number[];
}

export interface Evaluation {
  ev_stand: number;
  ev_hit: number;
  ev_double: number | null;
  ev_split: number | null;
  best: "stand" | "hit" | "double" | "split";
}

/** Dealer outcome probabilities keyed "17".."23"; "22" is the natural. */
export type DealerDist = Record<string, number>;

export interface AdviseResponse {
  is_player_natural: boolean;
  evaluation: Evaluation | null;
  dealer_dist_q: DealerDist | null;
  ew_estimate: number | null;
  payout?: number;
}

export interface AdviseRequest {
  deck: DeckJson;
  rules: Rules;
  upcard: CardValue;
  player_cards: CardValue[];
  depth: number;
}

export interface RemovalEffectsResponse {
  base_ew: number;
  r: Record<string, number>;
}

export const COPIES_PER_DECK: readonly number[] = [4, 4, 4, 4, 4, 4, 4, 4, 4, 16];

export function standardCounts(nDecks: number): number[] {
  return COPIES_PER_DECK.map((c) => c * nDecks);
}
