import { clearNode, linearScale, percentile, svgEl } from "./svg.js";
import type { FrontEntry, InstanceSummary } from "./types.js";
import { OBJECTIVE_LABELS } from "./types.js";

const MAP_W = 320;
const MAP_H = 280;
const MAP_PAD = 20;
const BARS_W = 320;
const BARS_H = 80;
const BAR_GAP = 2;

/** Side-by-side comparison of two archive alternatives: a route map
 * each, per-visit time-window violation bars, and the objective values
 * exactly as the server reported them. */
export class RouteComparisonView {
  private instance: InstanceSummary | null = null;
  private entries: FrontEntry[] = [];
  private selection: [number, number] = [0, 0];

  private readonly panes: [HTMLElement, HTMLElement];

  constructor(root: HTMLElement) {
    root.classList.add("route-comparison");
    const left = document.createElement("div");
    left.className = "route-pane pane-a";
    const right = document.createElement("div");
    right.className = "route-pane pane-b";
    root.append(left, right);
    this.panes = [left, right];
  }

  setInstance(instance: InstanceSummary): void {
    this.instance = instance;
    this.render();
  }

  setEntries(entries: FrontEntry[]): void {
    this.entries = entries;
    this.render();
  }

  select(a: number, b: number): void {
    this.selection = [a, b];
    this.render();
  }

  private render(): void {
    for (let side = 0; side < 2; side++) {
      const pane = this.panes[side] as HTMLElement;
      clearNode(pane);
      const index = this.selection[side] as number;
      const entry = this.entries[index];
      if (!this.instance || !entry) continue;
      this.renderPane(pane, entry, index);
    }
  }

  private renderPane(pane: HTMLElement, entry: FrontEntry, index: number): void {
    const title = document.createElement("h3");
    title.textContent = `alternative ${index}`;
    pane.appendChild(title);
    pane.appendChild(this.routeMap(entry));
    pane.appendChild(this.violationBars(entry));
    pane.appendChild(this.readout(entry));
  }

  private routeMap(entry: FrontEntry): SVGSVGElement {
    const instance = this.instance as InstanceSummary;
    const xsAll = [instance.depot.x, ...instance.customers.map((c) => c.x)];
    const ysAll = [instance.depot.y, ...instance.customers.map((c) => c.y)];
    const sx = linearScale(Math.min(...xsAll), Math.max(...xsAll), MAP_PAD, MAP_W - MAP_PAD);
    const sy = linearScale(Math.min(...ysAll), Math.max(...ysAll), MAP_H - MAP_PAD, MAP_PAD);
    const posOf = new Map(instance.customers.map((c) => [c.id, { x: sx(c.x), y: sy(c.y) }]));
    const depot = { x: sx(instance.depot.x), y: sy(instance.depot.y) };

    const svg = svgEl("svg", {
      class: "route-map",
      viewBox: `0 0 ${MAP_W} ${MAP_H}`,
      width: MAP_W,
      height: MAP_H,
    });
    entry.routes.forEach((route, routeIndex) => {
      const stops = route.map((id) => {
        const pos = posOf.get(id);
        if (!pos) throw new Error(`route references unknown customer ${id}`);
        return pos;
      });
      const points = [depot, ...stops, depot].map((p) => `${p.x},${p.y}`).join(" ");
      svg.appendChild(
        svgEl("polyline", {
          class: `route route-${routeIndex}`,
          points,
          fill: "none",
        }),
      );
    });
    for (const customer of instance.customers) {
      const pos = posOf.get(customer.id) as { x: number; y: number };
      svg.appendChild(
        svgEl("circle", { class: "customer", cx: pos.x, cy: pos.y, r: 3 }),
      );
    }
    svg.appendChild(
      svgEl("rect", {
        class: "depot",
        x: depot.x - 4,
        y: depot.y - 4,
        width: 8,
        height: 8,
      }),
    );
    return svg;
  }

  private violationBars(entry: FrontEntry): SVGSVGElement {
    const svg = svgEl("svg", {
      class: "violation-bars",
      viewBox: `0 0 ${BARS_W} ${BARS_H}`,
      width: BARS_W,
      height: BARS_H,
    });
    const violated = entry.trace.filter((v) => v.violation > 0);
    if (violated.length === 0) return svg;

    // linear in violation time, clipped at this alternative's 95th percentile
    const cap = percentile(violated.map((v) => v.violation), 0.95);
    const height = linearScale(0, cap, 0, BARS_H - 14);
    const slot = Math.min(14, (BARS_W - BAR_GAP) / entry.trace.length);

    entry.trace.forEach((visit, position) => {
      if (visit.violation <= 0) return;
      const h = height(Math.min(visit.violation, cap));
      svg.appendChild(
        svgEl("rect", {
          class: visit.lateness > 0 ? "bar late" : "bar early",
          fill: visit.lateness > 0 ? "#c0392b" : "#27ae60",
          x: BAR_GAP + position * slot,
          y: BARS_H - h,
          width: Math.max(1, slot - BAR_GAP),
          height: h,
          "data-customer": visit.customer_id,
          "data-violation": visit.violation,
        }),
      );
    });
    return svg;
  }

  private readout(entry: FrontEntry): HTMLElement {
    const list = document.createElement("dl");
    list.className = "objective-readout";
    const rows: [string, string][] = [
      // distance is rendered verbatim from the server payload
      [OBJECTIVE_LABELS.total_distance, String(entry.objectives.total_distance)],
      [OBJECTIVE_LABELS.vehicle_count, String(entry.objectives.vehicle_count)],
      [OBJECTIVE_LABELS.total_tw_violation, String(entry.objectives.total_tw_violation)],
      [OBJECTIVE_LABELS.violated_tw_count, String(entry.objectives.violated_tw_count)],
    ];
    for (const [label, value] of rows) {
      const dt = document.createElement("dt");
      dt.textContent = label;
      const dd = document.createElement("dd");
      dd.textContent = value;
      list.append(dt, dd);
    }
    return list;
  }
}
