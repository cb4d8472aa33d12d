// Advisor application: wires the session, the two-grade advice
// controller, and the DOM together. Expects the engine service on the
// same origin (run `bjengine serve` and open index.html through it or a
// dev proxy).

import { AdviceController } from "./advice";
import { ApiClient } from "./api";
import { renderAdvice, renderBetSignal, renderDealerChart, renderMessage } from "./dom";
import { buildAdviceView, buildBetSignal, buildDealerView } from "./render";
import { SessionError, ShoeSession } from "./session";
import { Owner, Rules } from "./types";
import { EffectsColumns } from "./estimate";

const DEFAULT_RULES: Rules = {
  n_decks: 2, dealer_hits_soft17: false, das: true, rsa: true, rsp: true,
};

function byId(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node;
}

export async function startApp(): Promise<void> {
  const api = new ApiClient("");
  const adviceBox = byId("advice");
  const dealerBox = byId("dealer-chart");
  const signalBox = byId("bet-signal");
  const statusBox = byId("status");
  const decks = Number(
    (byId("decks") as HTMLInputElement).value || "2");
  const rules = { ...DEFAULT_RULES, n_decks: decks };

  renderMessage("fetching removal-effect columns from the service " +
    "(one-time, can take a while on large shoes)", statusBox);
  const columns: EffectsColumns = {};
  for (const n of new Set([decks, Math.max(decks - 1, 1)])) {
    columns[n] = await api.removalEffects(n, rules);
  }
  const session = new ShoeSession(rules, decks, columns);
  const controller = new AdviceController(api);
  renderMessage("ready", statusBox);

  function refresh(): void {
    renderBetSignal(buildBetSignal(session.runningEstimate), signalBox);
    renderAdvice(buildAdviceView(controller.state), adviceBox);
    const dist = (controller.state.deep ?? controller.state.fast)
      ?.dealer_dist_q;
    if (dist) {
      renderDealerChart(buildDealerView(dist), dealerBox);
    }
    byId("seen-count").textContent = String(session.seenCards.length);
    byId("hand").textContent = session.currentHand.join(" + ") || "none";
    byId("upcard").textContent = String(session.dealerUpcard ?? "none");
  }

  controller.onChange = refresh;

  async function maybeAdvise(): Promise<void> {
    if (session.currentHand.length >= 2 && session.dealerUpcard !== null) {
      try {
        await controller.request(session);
      } catch (err) {
        renderMessage(String(err), statusBox);
      }
    }
  }

  for (const owner of ["player", "dealer", "other"] as Owner[]) {
    for (let value = 1; value <= 10; value++) {
      const button = document.querySelector(
        `button[data-owner="${owner}"][data-value="${value}"]`);
      button?.addEventListener("click", () => {
        try {
          session.recordCard(value, owner);
          renderMessage("", statusBox);
        } catch (err) {
          if (err instanceof SessionError) {
            renderMessage(err.message, statusBox);
            return;
          }
          throw err;
        }
        refresh();
        void maybeAdvise();
      });
    }
  }
  byId("undo").addEventListener("click", () => {
    try {
      session.undo();
    } catch (err) {
      renderMessage(String(err), statusBox);
      return;
    }
    refresh();
    void maybeAdvise();
  });
  byId("next-round").addEventListener("click", () => {
    session.nextRound();
    refresh();
  });
  byId("export").addEventListener("click", () => {
    (byId("export-output") as HTMLTextAreaElement).value =
      JSON.stringify(session.toJSON(), null, 1);
  });

  refresh();
}

if (typeof document !== "undefined" && document.getElementById("advice")) {
  void startApp();
}
