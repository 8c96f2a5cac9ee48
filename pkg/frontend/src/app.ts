import { ApiClient } from "./api.js";
import {
  type PanelRefs,
  renderDiff,
  renderError,
  renderItemList,
  renderState,
} from "./render.js";

const APP_HTML = `
  <header>
    <h1>grocermind</h1>
    <div id="status-line" class="status"></div>
    <div id="error-line" class="error"></div>
  </header>
  <main>
    <section class="panel" id="camera-panel">
      <h2>Camera view</h2>
      <div>context: <span id="camera-context"></span></div>
      <ul id="camera-list"></ul>
      <div class="controls">
        <select id="context-select"></select>
        <button id="visit-btn">Visit</button>
        <button id="teach-btn">Teach</button>
        <button id="learn-btn">Learn (<span id="teach-badge">0</span> staged)</button>
      </div>
    </section>
    <section class="panel" id="missing-panel">
      <h2>Missing groceries</h2>
      <ul id="missing-list"></ul>
      <div class="controls">
        <button id="report-btn">Run report</button>
        <button id="reset-btn">Reset list</button>
      </div>
    </section>
    <section class="panel" id="storage-panel">
      <h2>In storage</h2>
      <ul id="storage-list"></ul>
    </section>
    <section class="panel" id="clusters-panel">
      <h2>Learned contexts</h2>
      <ul id="cluster-list"></ul>
    </section>
    <section class="panel" id="grocery-panel">
      <h2>Grocery list check</h2>
      <input id="grocery-input" type="text"
             placeholder="your list, comma separated" />
      <button id="upload-btn">Compare</button>
      <div id="diff-panel"></div>
    </section>
  </main>
`;

export interface AppHandle {
  refresh(): Promise<void>;
  dispose(): void;
  refs: PanelRefs;
}

function grab<T extends HTMLElement>(root: ParentNode, id: string): T {
  const el = root.querySelector<T>(`#${id}`);
  if (!el) throw new Error(`missing element #${id}`);
  return el;
}

export function initApp(
  root: HTMLElement,
  api: ApiClient,
  pollMs = 1500,
): AppHandle {
  root.innerHTML = APP_HTML;
  const refs: PanelRefs = {
    statusLine: grab(root, "status-line"),
    cameraContext: grab(root, "camera-context"),
    cameraList: grab(root, "camera-list"),
    missingList: grab(root, "missing-list"),
    storageList: grab(root, "storage-list"),
    clusterList: grab(root, "cluster-list"),
    contextSelect: grab<HTMLSelectElement>(root, "context-select"),
    teachBadge: grab(root, "teach-badge"),
  };
  const errorLine = grab(root, "error-line");
  const diffPanel = grab(root, "diff-panel");
  const groceryInput = grab<HTMLInputElement>(root, "grocery-input");
  const buttons = Array.from(root.querySelectorAll("button"));

  // a failed command stays visible across refreshes until the next
  // command succeeds; transient fetch errors clear on their own
  let commandError: string | null = null;

  async function refresh(): Promise<void> {
    try {
      const [state, missing] = await Promise.all([
        api.getState(),
        api.getMissing(),
      ]);
      renderState(refs, state);
      // the missing panel mirrors GET /missing, the endpoint the
      // grocery workflow is defined against
      renderItemList(refs.missingList, missing.missingList, "nothing missing");
      renderError(errorLine, commandError);
    } catch (err) {
      renderError(errorLine, err instanceof Error ? err.message : String(err));
    }
  }

  // at most one mutating request in flight; extra clicks are dropped
  let busy = false;
  async function mutate(action: () => Promise<unknown>): Promise<void> {
    if (busy) return;
    busy = true;
    for (const b of buttons) b.disabled = true;
    try {
      await action();
      commandError = null;
    } catch (err) {
      commandError = err instanceof Error ? err.message : String(err);
    } finally {
      busy = false;
      for (const b of buttons) b.disabled = false;
    }
    await refresh();
  }

  grab(root, "visit-btn").onclick = () =>
    void mutate(() => api.visit(refs.contextSelect.value));
  grab(root, "teach-btn").onclick = () =>
    void mutate(() => api.teach(refs.contextSelect.value));
  grab(root, "learn-btn").onclick = () => void mutate(() => api.learn());
  grab(root, "report-btn").onclick = () => void mutate(() => api.report());
  grab(root, "reset-btn").onclick = () => void mutate(() => api.reset());
  grab(root, "upload-btn").onclick = () =>
    void mutate(async () => {
      const items = groceryInput.value
        .split(",")
        .map((s) => s.trim())
        .filter((s) => s.length > 0);
      renderDiff(diffPanel, await api.groceryDiff(items));
    });

  const timer = setInterval(() => void refresh(), pollMs);
  void refresh();

  return {
    refresh,
    dispose: () => clearInterval(timer),
    refs,
  };
}
