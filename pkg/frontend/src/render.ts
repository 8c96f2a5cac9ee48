import type { DiffResult, SessionState } from "./types.js";

/** Replace a list element's children with one <li> per item. */
export function renderItemList(
  el: HTMLElement,
  items: string[],
  emptyText: string,
): void {
  el.replaceChildren();
  if (items.length === 0) {
    const li = document.createElement("li");
    li.className = "empty";
    li.textContent = emptyText;
    el.appendChild(li);
    return;
  }
  for (const item of items) {
    const li = document.createElement("li");
    li.textContent = item;
    el.appendChild(li);
  }
}

export interface PanelRefs {
  statusLine: HTMLElement;
  cameraContext: HTMLElement;
  cameraList: HTMLElement;
  missingList: HTMLElement;
  storageList: HTMLElement;
  clusterList: HTMLElement;
  contextSelect: HTMLSelectElement;
  teachBadge: HTMLElement;
}

/** Paint every panel from one state payload. */
export function renderState(refs: PanelRefs, state: SessionState): void {
  refs.statusLine.textContent =
    `day ${state.day} · window days ${state.windowStartDay}-` +
    `${state.windowEndDay} · ${state.windowEntries} visit(s) buffered · ` +
    `${state.reportCount} report(s)`;

  refs.cameraContext.textContent = state.currentContext ?? "(no visit yet)";
  renderItemList(refs.cameraList, state.latestDetections, "nothing detected");
  renderItemList(refs.missingList, state.missingList, "nothing missing");
  renderItemList(refs.storageList, state.storageItems, "nothing in storage");
  renderItemList(
    refs.clusterList,
    state.clusters.map(
      (c) => `${c.label}${c.isStorage ? " (storage)" : ""}`,
    ),
    "untrained",
  );
  refs.teachBadge.textContent = String(state.teachBufferCount);

  syncContextOptions(refs.contextSelect, Object.keys(state.contexts));
}

function syncContextOptions(select: HTMLSelectElement, names: string[]): void {
  const current = Array.from(select.options).map((o) => o.value);
  if (
    current.length === names.length &&
    current.every((v, i) => v === names[i])
  ) {
    return;
  }
  const chosen = select.value;
  select.replaceChildren();
  for (const name of names) {
    const option = document.createElement("option");
    option.value = name;
    option.textContent = name;
    select.appendChild(option);
  }
  if (names.includes(chosen)) select.value = chosen;
}

export function renderDiff(el: HTMLElement, diff: DiffResult): void {
  el.replaceChildren();
  const header = document.createElement("p");
  header.textContent =
    diff.difference.length === 0
      ? "your list covers everything"
      : "missing from your list:";
  el.appendChild(header);
  const ul = document.createElement("ul");
  ul.className = "diff-items";
  for (const item of diff.difference) {
    const li = document.createElement("li");
    li.textContent = item;
    ul.appendChild(li);
  }
  el.appendChild(ul);
}

export function renderError(el: HTMLElement, message: string | null): void {
  el.textContent = message ?? "";
  el.classList.toggle("visible", message !== null);
}
