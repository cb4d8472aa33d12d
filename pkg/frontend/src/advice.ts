// Two-grade advice: a fast shallow evaluation renders immediately, then a
// deep one replaces it in the background. If the two grades disagree on
// the recommended action, both are kept so the view can show the
// disagreement. A lost service keeps the last advice visible but stale.

import { ApiClient, ServiceUnreachable } from "./api";
import { ShoeSession } from "./session";
import { AdviseResponse } from "./types";

export const FAST_DEPTH = 4;
export const DEEP_DEPTH = 13;

export interface AdviceState {
  status: "idle" | "loading" | "ready" | "offline";
  fast: AdviseResponse | null;
  deep: AdviseResponse | null;
  stale: boolean;
}

export class AdviceController {
  private readonly api: ApiClient;
  state: AdviceState = { status: "idle", fast: null, deep: null, stale: false };
  onChange: (state: AdviceState) => void = () => {};
  private generation = 0;

  constructor(api: ApiClient) {
    this.api = api;
  }

  /** Ask for advice on the session's current hand; newest request wins. */
  async request(session: ShoeSession): Promise<AdviceState> {
    const hand = session.currentHand;
    const upcard = session.dealerUpcard;
    if (hand.length < 2 || upcard === null) {
      throw new Error("advice needs two player cards and a dealer upcard");
    }
    const gen = ++this.generation;
    const counts = session.remainingCounts();
    this.update({ ...this.state, status: "loading" });
    let fast: AdviseResponse;
    try {
      fast = await this.api.advise(counts, session.rules, upcard, hand,
                                   FAST_DEPTH);
    } catch (err) {
      return this.failed(gen, err);
    }
    if (gen !== this.generation) {
      return this.state;
    }
    this.update({ status: "ready", fast, deep: null, stale: false });
    if (fast.is_player_natural) {
      return this.state; // settled, nothing deeper to compute
    }
    try {
      const deep = await this.api.advise(counts, session.rules, upcard, hand,
                                         DEEP_DEPTH);
      if (gen === this.generation) {
        this.update({ status: "ready", fast, deep, stale: false });
      }
    } catch (err) {
      this.failed(gen, err);
    }
    return this.state;
  }

  private failed(gen: number, err: unknown): AdviceState {
    if (err instanceof DOMException && err.name === "AbortError") {
      return this.state; // superseded by a newer request
    }
    if (gen === this.generation && err instanceof ServiceUnreachable) {
      this.update({ ...this.state, status: "offline", stale: true });
      return this.state;
    }
    throw err;
  }

  private update(state: AdviceState): void {
    this.state = state;
    this.onChange(state);
  }
}
