import { clearNode, svgEl } from "./svg.js";
import type { FrontEntry } from "./types.js";
import { OBJECTIVE_LABELS, OBJECTIVE_NAMES, objectivesToArray } from "./types.js";

const SIZE = 300;
const CENTER = SIZE / 2;
const RADIUS = 110;

/** Per-objective normalisation over the selected alternatives.
 *
 * Rows are alternatives, columns the four objectives. Each column maps
 * to [0, 1] with the best (smallest) value at 1, so the strongest
 * alternative on an axis always touches the outer edge. A column with
 * no spread maps everything to the edge.
 */
export function normalize(rows: number[][]): number[][] {
  const axes = OBJECTIVE_NAMES.length;
  const result = rows.map(() => new Array<number>(axes).fill(1));
  for (let axis = 0; axis < axes; axis++) {
    const column = rows.map((row) => row[axis] as number);
    const lo = Math.min(...column);
    const hi = Math.max(...column);
    if (hi <= lo) continue;
    for (let row = 0; row < rows.length; row++) {
      (result[row] as number[])[axis] = (hi - (column[row] as number)) / (hi - lo);
    }
  }
  return result;
}

/** Radar chart of objective trade-offs across selected alternatives.
 * Axes are inverted (best value at the rim), so a larger polygon means
 * a better all-round alternative. */
export class TradeoffView {
  private entries: FrontEntry[] = [];
  private selection: number[] = [];

  private readonly svg: SVGSVGElement;

  constructor(root: HTMLElement) {
    root.classList.add("tradeoff-view");
    this.svg = svgEl("svg", {
      class: "radar",
      viewBox: `0 0 ${SIZE} ${SIZE}`,
      width: SIZE,
      height: SIZE,
    });
    root.appendChild(this.svg);
  }

  setAlternatives(entries: FrontEntry[]): void {
    this.entries = entries;
    this.render();
  }

  setSelection(indices: number[]): void {
    this.selection = [...indices];
    this.render();
  }

  private axisPoint(axis: number, norm: number): { x: number; y: number } {
    const angle = -Math.PI / 2 + (axis * 2 * Math.PI) / OBJECTIVE_NAMES.length;
    return {
      x: CENTER + norm * RADIUS * Math.cos(angle),
      y: CENTER + norm * RADIUS * Math.sin(angle),
    };
  }

  private render(): void {
    clearNode(this.svg);
    for (let axis = 0; axis < OBJECTIVE_NAMES.length; axis++) {
      const rim = this.axisPoint(axis, 1);
      this.svg.appendChild(
        svgEl("line", { class: "axis", x1: CENTER, y1: CENTER, x2: rim.x, y2: rim.y }),
      );
      const labelAt = this.axisPoint(axis, 1.18);
      const label = svgEl("text", {
        class: "axis-label",
        x: labelAt.x,
        y: labelAt.y,
        "text-anchor": "middle",
      });
      label.textContent = OBJECTIVE_LABELS[OBJECTIVE_NAMES[axis] as keyof typeof OBJECTIVE_LABELS];
      this.svg.appendChild(label);
    }

    const chosen = this.selection
      .map((index) => ({ index, entry: this.entries[index] }))
      .filter((pick): pick is { index: number; entry: FrontEntry } => pick.entry !== undefined);
    if (chosen.length === 0) return;

    const norms = normalize(chosen.map((pick) => objectivesToArray(pick.entry.objectives)));
    norms.forEach((row, i) => {
      const points = row
        .map((norm, axis) => {
          const p = this.axisPoint(axis, norm);
          return `${p.x},${p.y}`;
        })
        .join(" ");
      this.svg.appendChild(
        svgEl("polygon", {
          class: `tradeoff-polygon alt-${chosen[i]?.index}`,
          points,
          "fill-opacity": 0.18,
        }),
      );
    });
  }
}
