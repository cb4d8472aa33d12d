// DOM materialization of the view models. Kept declarative and free of
// logic; everything decision-shaped lives in render.ts where the tests
// can reach it.

import {
  ActionBar,
  AdviceView,
  BetSignal,
  DealerBar,
  NaturalView,
  OfflineView,
} from "./render";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K, className?: string, text?: string): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function actionBarNode(bar: ActionBar): HTMLElement {
  const row = el("div", bar.highlighted ? "bar-row highlighted" : "bar-row");
  const fill = el("div", "bar-fill");
  fill.style.width = `${bar.widthPct}%`;
  row.append(el("span", "bar-label", bar.label), fill);
  return row;
}

export function renderAdvice(
  view: AdviceView | NaturalView | OfflineView | null,
  container: HTMLElement): void {
  container.replaceChildren();
  if (view === null) {
    container.append(el("p", "placeholder", "record a hand to get advice"));
    return;
  }
  if (view.kind === "offline") {
    container.append(el("div", "banner offline", view.text));
    return;
  }
  if (view.kind === "natural") {
    const banner = el("div", "banner natural", view.text);
    if (view.stale) banner.classList.add("stale");
    container.append(banner);
    return;
  }
  const box = el("div", view.stale ? "advice stale" : "advice");
  box.append(el("h3", "recommended", view.recommended.toUpperCase()));
  for (const bar of view.bars) {
    box.append(actionBarNode(bar));
  }
  if (view.disagreement) {
    box.append(el("p", "disagreement",
      `fast grade says ${view.disagreement.fast}, ` +
      `deep grade says ${view.disagreement.deep}`));
  }
  container.append(box);
}

export function renderDealerChart(bars: DealerBar[],
                                  container: HTMLElement): void {
  container.replaceChildren();
  for (const bar of bars) {
    const col = el("div", "dealer-col");
    const fill = el("div", "dealer-fill");
    fill.style.height = `${bar.heightPct}%`;
    fill.title = bar.prob.toFixed(5);
    col.append(fill, el("span", "dealer-label", bar.label));
    container.append(col);
  }
}

export function renderBetSignal(signal: BetSignal,
                                container: HTMLElement): void {
  container.replaceChildren();
  const light = el("div", `signal ${signal.color}`, signal.text);
  container.append(light);
}

export function renderMessage(text: string, container: HTMLElement): void {
  container.replaceChildren(el("p", "message", text));
}
