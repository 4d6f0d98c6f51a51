import { clearNode, linearScale, svgEl } from "./svg.js";
import type { ObjectiveName, Snapshot } from "./types.js";
import { OBJECTIVE_LABELS, OBJECTIVE_NAMES, vectorKey } from "./types.js";

const CHART_W = 300;
const CHART_H = 70;
const SCATTER_W = 340;
const SCATTER_H = 260;
const PAD = 28;

/** Live view of a run: one best-value sparkline per objective, the
 * archive size, and an objective-space scatter of the latest population
 * with archive members highlighted. Everything shown comes straight
 * from snapshots; nothing is recomputed client-side. */
export class ProgressView {
  readonly history: Snapshot[] = [];
  private latest: Snapshot | null = null;

  private readonly meta: HTMLElement;
  private readonly charts: HTMLElement;
  private readonly xSelect: HTMLSelectElement;
  private readonly ySelect: HTMLSelectElement;
  private readonly scatter: SVGSVGElement;

  constructor(root: HTMLElement) {
    root.classList.add("progress-view");

    this.meta = document.createElement("div");
    this.meta.className = "progress-meta";
    this.meta.textContent = "waiting for snapshots";
    root.appendChild(this.meta);

    this.charts = document.createElement("div");
    this.charts.className = "best-charts";
    root.appendChild(this.charts);

    const controls = document.createElement("div");
    controls.className = "scatter-controls";
    this.xSelect = this.axisSelect("axis-x", "total_distance");
    this.ySelect = this.axisSelect("axis-y", "vehicle_count");
    controls.append("x:", this.xSelect, " y:", this.ySelect);
    root.appendChild(controls);

    this.scatter = svgEl("svg", {
      class: "scatter",
      viewBox: `0 0 ${SCATTER_W} ${SCATTER_H}`,
      width: SCATTER_W,
      height: SCATTER_H,
    });
    root.appendChild(this.scatter);
  }

  private axisSelect(className: string, initial: ObjectiveName): HTMLSelectElement {
    const select = document.createElement("select");
    select.className = className;
    for (const name of OBJECTIVE_NAMES) {
      const option = document.createElement("option");
      option.value = name;
      option.textContent = OBJECTIVE_LABELS[name];
      select.appendChild(option);
    }
    select.value = initial;
    select.addEventListener("change", () => this.renderScatter());
    return select;
  }

  addSnapshot(snapshot: Snapshot): void {
    this.history.push(snapshot);
    this.latest = snapshot;
    this.meta.textContent =
      `generation ${snapshot.generation_index}, ` +
      `archive ${snapshot.archive_objectives.length}`;
    this.renderCharts();
    this.renderScatter();
  }

  reset(): void {
    this.history.length = 0;
    this.latest = null;
    this.meta.textContent = "waiting for snapshots";
    clearNode(this.charts);
    clearNode(this.scatter);
  }

  private bestSeries(axis: number): number[] {
    const name = OBJECTIVE_NAMES[axis] as ObjectiveName;
    return this.history.map((s) => {
      const best = s.best_per_objective.find((b) => b.objective === name);
      if (!best) throw new Error(`snapshot lacks best entry for ${name}`);
      return best.values[axis] as number;
    });
  }

  private renderCharts(): void {
    clearNode(this.charts);
    for (let axis = 0; axis < OBJECTIVE_NAMES.length; axis++) {
      const name = OBJECTIVE_NAMES[axis] as ObjectiveName;
      const series = this.bestSeries(axis);
      const block = document.createElement("div");
      block.className = `best-chart best-${name}`;

      const label = document.createElement("span");
      label.className = "best-label";
      // shown verbatim as the server sent it
      label.textContent = `best ${OBJECTIVE_LABELS[name]}: ${String(series[series.length - 1])}`;
      block.appendChild(label);

      const svg = svgEl("svg", {
        viewBox: `0 0 ${CHART_W} ${CHART_H}`,
        width: CHART_W,
        height: CHART_H,
      });
      const xs = linearScale(0, Math.max(1, series.length - 1), 4, CHART_W - 4);
      const lo = Math.min(...series);
      const hi = Math.max(...series);
      const ys = linearScale(lo, hi, CHART_H - 6, 6);
      const points = series.map((v, i) => `${xs(i)},${ys(v)}`).join(" ");
      svg.appendChild(
        svgEl("polyline", { class: "best-line", points, fill: "none" }),
      );
      block.appendChild(svg);
      this.charts.appendChild(block);
    }
  }

  private renderScatter(): void {
    clearNode(this.scatter);
    const snapshot = this.latest;
    if (!snapshot) return;
    const xAxis = OBJECTIVE_NAMES.indexOf(this.xSelect.value as ObjectiveName);
    const yAxis = OBJECTIVE_NAMES.indexOf(this.ySelect.value as ObjectiveName);

    const everything = [...snapshot.population_objectives, ...snapshot.archive_objectives];
    const xValues = everything.map((v) => v[xAxis] as number);
    const yValues = everything.map((v) => v[yAxis] as number);
    const xs = linearScale(Math.min(...xValues), Math.max(...xValues), PAD, SCATTER_W - PAD);
    const ys = linearScale(Math.min(...yValues), Math.max(...yValues), SCATTER_H - PAD, PAD);

    this.scatter.appendChild(
      svgEl("line", {
        class: "axis", x1: PAD, y1: SCATTER_H - PAD, x2: SCATTER_W - PAD, y2: SCATTER_H - PAD,
      }),
    );
    this.scatter.appendChild(
      svgEl("line", { class: "axis", x1: PAD, y1: PAD, x2: PAD, y2: SCATTER_H - PAD }),
    );

    const archived = new Set(snapshot.archive_objectives.map(vectorKey));
    for (const vector of snapshot.population_objectives) {
      const inArchive = archived.has(vectorKey(vector));
      this.scatter.appendChild(
        svgEl("circle", {
          class: inArchive ? "point archived" : "point",
          cx: xs(vector[xAxis] as number),
          cy: ys(vector[yAxis] as number),
          r: inArchive ? 5 : 3,
          "data-vector": vectorKey(vector),
        }),
      );
    }
  }
}
