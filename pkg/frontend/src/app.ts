import { ApiClient } from "./api.js";
import { ControlPanel } from "./controls.js";
import { EventFeed, type SourceFactory } from "./events.js";
import { ProgressView } from "./progress.js";
import { TradeoffView } from "./radar.js";
import { RouteComparisonView } from "./routes.js";
import type { FrontDocument, RunHandle } from "./types.js";

export interface AppOptions {
  api?: ApiClient;
  sourceFactory?: SourceFactory;
}

export interface App {
  panel: ControlPanel;
  progress: ProgressView;
  comparison: RouteComparisonView;
  tradeoff: TradeoffView;
  feed: EventFeed | null;
  /** Resolves once the front fetched after a Finished frame is rendered. */
  pendingFront: Promise<void> | null;
}

function section(root: HTMLElement, className: string, heading: string): HTMLElement {
  const el = document.createElement("section");
  el.className = className;
  const h = document.createElement("h2");
  h.textContent = heading;
  el.appendChild(h);
  root.appendChild(el);
  return el;
}

/** Assemble the page: control panel feeding a run, live progress from
 * the event stream, and front comparison views once the run finishes. */
export function mountApp(root: HTMLElement, options: AppOptions = {}): App {
  const api = options.api ?? new ApiClient("");

  const connection = document.createElement("div");
  connection.className = "connection";
  connection.textContent = "idle";
  root.appendChild(connection);

  const panelRoot = section(root, "panel-section", "Run");
  const progressRoot = section(root, "progress-section", "Progress");
  const frontRoot = section(root, "front-section", "Alternatives");

  const altA = document.createElement("select");
  altA.className = "alt-a";
  const altB = document.createElement("select");
  altB.className = "alt-b";
  frontRoot.append(altA, altB);
  const comparisonRoot = document.createElement("div");
  const tradeoffRoot = document.createElement("div");
  frontRoot.append(comparisonRoot, tradeoffRoot);

  const progress = new ProgressView(progressRoot);
  const comparison = new RouteComparisonView(comparisonRoot);
  const tradeoff = new TradeoffView(tradeoffRoot);

  const app: App = {
    panel: null as unknown as ControlPanel,
    progress,
    comparison,
    tradeoff,
    feed: null,
    pendingFront: null,
  };

  const applySelection = () => {
    const a = Number(altA.value);
    const b = Number(altB.value);
    comparison.select(a, b);
    tradeoff.setSelection(a === b ? [a] : [a, b]);
  };
  altA.addEventListener("change", applySelection);
  altB.addEventListener("change", applySelection);

  const showFront = (front: FrontDocument) => {
    comparison.setEntries(front.entries);
    tradeoff.setAlternatives(front.entries);
    for (const select of [altA, altB]) {
      select.textContent = "";
      front.entries.forEach((_, index) => {
        const option = document.createElement("option");
        option.value = String(index);
        option.textContent = `alternative ${index}`;
        select.appendChild(option);
      });
    }
    altA.value = "0";
    altB.value = String(Math.min(1, front.entries.length - 1));
    applySelection();
  };

  const startFeed = (run: RunHandle) => {
    app.feed?.stop();
    progress.reset();
    const feed = new EventFeed(
      api.baseUrl,
      run.run_id,
      {
        onSnapshot: (snapshot) => progress.addSnapshot(snapshot),
        onStatus: (frame) => {
          app.panel.setStatus(frame.status);
          if (frame.config) app.panel.applyConfig(frame.config);
          if (frame.status === "Finished") {
            app.pendingFront = api.getFront(run.run_id).then(showFront);
          }
        },
        onConnectionChange: (connected) => {
          connection.textContent = connected ? "live" : "reconnecting";
        },
      },
      options.sourceFactory,
    );
    app.feed = feed;
    feed.start();
    connection.textContent = "live";
  };

  app.panel = new ControlPanel(panelRoot, api, {
    onInstance: (summary) => comparison.setInstance(summary),
    onRun: startFeed,
  });

  return app;
}
