import { describe, expect, it } from "vitest";
import { ProgressView } from "../src/progress.js";
import { vectorKey } from "../src/types.js";
import { VECTOR_A, makeSnapshot } from "./fixtures.js";

function mount() {
  const root = document.createElement("div");
  document.body.appendChild(root);
  return { root, view: new ProgressView(root) };
}

describe("ProgressView scatter", () => {
  it("plots the worked four-vector population and highlights only the archive member", () => {
    const { root, view } = mount();
    view.addSnapshot(makeSnapshot(0));

    const points = [...root.querySelectorAll("svg.scatter circle.point")];
    expect(points.length).toBe(4);

    const highlighted = points.filter((p) => p.classList.contains("archived"));
    expect(highlighted.length).toBe(1);
    expect(highlighted[0]?.getAttribute("data-vector")).toBe(vectorKey(VECTOR_A));

    const plain = points.filter((p) => !p.classList.contains("archived"));
    expect(plain.length).toBe(3);
  });

  it("reports generation and archive size from the latest snapshot", () => {
    const { root, view } = mount();
    view.addSnapshot(makeSnapshot(0));
    view.addSnapshot(makeSnapshot(1, { archive_objectives: [VECTOR_A, [0.5, 3, 1, 1]] }));

    expect(root.querySelector(".progress-meta")?.textContent).toBe("generation 1, archive 2");
  });

  it("re-renders the scatter when the objective pair changes", () => {
    const { root, view } = mount();
    view.addSnapshot(makeSnapshot(0));

    const ySelect = root.querySelector<HTMLSelectElement>("select.axis-y");
    expect(ySelect?.value).toBe("vehicle_count");
    ySelect!.value = "total_tw_violation";
    ySelect!.dispatchEvent(new Event("change"));

    const points = [...root.querySelectorAll("svg.scatter circle.point")];
    expect(points.length).toBe(4);
    expect(points.filter((p) => p.classList.contains("archived")).length).toBe(1);
  });
});

describe("ProgressView best charts", () => {
  it("draws one sparkline per objective and shows the best value verbatim", () => {
    const { root, view } = mount();
    view.addSnapshot(makeSnapshot(0));
    view.addSnapshot(
      makeSnapshot(1, {
        best_per_objective: makeSnapshot(1).best_per_objective.map((b) => ({
          ...b,
          values: [0.8999999999999999, 1, 1, 1],
        })),
      }),
    );

    expect(root.querySelectorAll(".best-chart polyline.best-line").length).toBe(4);
    const label = root.querySelector(".best-chart.best-total_distance .best-label");
    expect(label?.textContent).toBe("best distance: 0.8999999999999999");
  });

  it("clears its history on reset", () => {
    const { root, view } = mount();
    view.addSnapshot(makeSnapshot(0));
    view.reset();

    expect(view.history.length).toBe(0);
    expect(root.querySelectorAll("circle.point").length).toBe(0);
    expect(root.querySelector(".progress-meta")?.textContent).toBe("waiting for snapshots");
  });
});
