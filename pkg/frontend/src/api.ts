// Thin typed client for the advisor service. At most one advice request
// is in flight; issuing a new one aborts its predecessor.

import {
  AdviseRequest,
  AdviseResponse,
  CardValue,
  DeckJson,
  RemovalEffectsResponse,
  Rules,
} from "./types";

export class ServiceUnreachable extends Error {}

export class ApiClient {
  private readonly baseUrl: string;
  private inflight: AbortController | null = null;

  constructor(baseUrl = "") {
    this.baseUrl = baseUrl.replace(/\/$/, "");
  }

  private async post<T>(path: string, body: unknown,
                        signal?: AbortSignal): Promise<T> {
    let response: Response;
    try {
      response = await fetch(`${this.baseUrl}${path}`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(body),
        signal,
      });
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") {
        throw err;
      }
      throw new ServiceUnreachable(String(err));
    }
    if (!response.ok) {
      const detail = await response.text();
      throw new Error(`service error ${response.status}: ${detail}`);
    }
    return (await response.json()) as T;
  }

  /**
   * Request advice for the current situation, aborting any previous
   * advice request still in flight.
   */
  advise(deckCounts: number[], rules: Rules, upcard: CardValue,
         playerCards: CardValue[], depth: number): Promise<AdviseResponse> {
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    const deck: DeckJson = { mode: "finite", counts: deckCounts };
    const request: AdviseRequest = {
      deck, rules, upcard, player_cards: playerCards, depth,
    };
    return this.post<AdviseResponse>("/advise", request, controller.signal);
  }

  removalEffects(nDecks: number, rules: Rules):
      Promise<RemovalEffectsResponse> {
    return this.post<RemovalEffectsResponse>("/removal-effects", {
      rules: { ...rules, n_decks: nDecks },
    });
  }

  async health(): Promise<boolean> {
    try {
      const res = await fetch(`${this.baseUrl}/health`);
      return res.ok;
    } catch {
      return false;
    }
  }
}
