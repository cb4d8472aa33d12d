// Pure view-model builders. Everything on screen derives from service
// responses; these functions only shape them for display, so they carry
// the contract tests against recorded fixtures.

import { AdviceState } from "./advice";
import { AdviseResponse, DealerDist, Evaluation } from "./types";

export interface ActionBar {
  action: "stand" | "hit" | "double" | "split";
  ev: number;
  label: string;
  widthPct: number;
  highlighted: boolean;
}

export interface AdviceView {
  kind: "actions";
  recommended: string;
  bars: ActionBar[];
  /** set when the fast and deep grades disagree on the action */
  disagreement: { fast: string; deep: string } | null;
  stale: boolean;
}

export interface NaturalView {
  kind: "natural";
  text: string;
  stale: boolean;
}

export interface OfflineView {
  kind: "offline";
  text: string;
}

export interface DealerBar {
  label: string;
  prob: number;
  heightPct: number;
}

export interface BetSignal {
  color: "green" | "grey";
  text: string;
}

const BAR_SPAN = 2.0; // expected wins rendered across [-2, 2]

function bar(action: ActionBar["action"], ev: number,
             highlighted: boolean): ActionBar {
  const clamped = Math.max(-BAR_SPAN, Math.min(BAR_SPAN, ev));
  return {
    action,
    ev,
    label: `${action.toUpperCase()} ${ev >= 0 ? "+" : ""}${ev.toFixed(6)}`,
    widthPct: Math.round(50 + (clamped / BAR_SPAN) * 50),
    highlighted,
  };
}

function actionBars(evaluation: Evaluation): ActionBar[] {
  const bars: ActionBar[] = [
    bar("stand", evaluation.ev_stand, evaluation.best === "stand"),
    bar("hit", evaluation.ev_hit, evaluation.best === "hit"),
  ];
  if (evaluation.ev_double !== null) {
    bars.push(bar("double", evaluation.ev_double,
                  evaluation.best === "double"));
  }
  if (evaluation.ev_split !== null) {
    bars.push(bar("split", evaluation.ev_split, evaluation.best === "split"));
  }
  return bars;
}

export function buildAdviceView(state: AdviceState):
    AdviceView | NaturalView | OfflineView | null {
  const current = state.deep ?? state.fast;
  if (state.status === "offline" && current === null) {
    return { kind: "offline", text: "service unreachable" };
  }
  if (current === null) {
    return null;
  }
  if (current.is_player_natural) {
    return { kind: "natural", text: "NATURAL pays 1.5", stale: state.stale };
  }
  const evaluation = (state.deep ?? state.fast)!.evaluation!;
  let disagreement: AdviceView["disagreement"] = null;
  if (state.fast?.evaluation && state.deep?.evaluation
      && state.fast.evaluation.best !== state.deep.evaluation.best) {
    disagreement = {
      fast: state.fast.evaluation.best,
      deep: state.deep.evaluation.best,
    };
  }
  return {
    kind: "actions",
    recommended: evaluation.best,
    bars: actionBars(evaluation),
    disagreement,
    stale: state.stale,
  };
}

/** Six bars mirroring the dealer columns 17..21 and bust. */
export function buildDealerView(dist: DealerDist): DealerBar[] {
  const order: [string, string][] = [
    ["17", "17"], ["18", "18"], ["19", "19"], ["20", "20"], ["21", "21"],
    ["23", "bust"],
  ];
  return order.map(([key, label]) => {
    const prob = dist[key] ?? 0;
    return { label, prob, heightPct: Math.round(prob * 100) };
  });
}

/** Advisory color only: green when the shoe favors the player. */
export function buildBetSignal(runningEstimate: number): BetSignal {
  const pct = (runningEstimate * 100).toFixed(2);
  return {
    color: runningEstimate > 0 ? "green" : "grey",
    text: `${runningEstimate >= 0 ? "+" : ""}${pct}%`,
  };
}

export function describeAdvice(response: AdviseResponse): string {
  if (response.is_player_natural) {
    return "NATURAL pays 1.5";
  }
  const ev = response.evaluation!;
  const best = ev.best;
  const value = { stand: ev.ev_stand, hit: ev.ev_hit, double: ev.ev_double,
                  split: ev.ev_split }[best]!;
  return `${best.toUpperCase()} ${value >= 0 ? "+" : ""}${value.toFixed(6)}`;
}
