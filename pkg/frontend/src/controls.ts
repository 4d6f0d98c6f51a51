import type { ApiClient } from "./api.js";
import type { InstanceSummary, RunConfig, RunHandle, RunStatus } from "./types.js";
import { TERMINAL_STATUSES } from "./types.js";

export interface PanelCallbacks {
  onInstance?: (instance: InstanceSummary) => void;
  onRun?: (run: RunHandle) => void;
}

/** Run controls: instance upload, run creation, pause/resume/cancel,
 * and live steering of mutation/crossover rates and fitness poles.
 * Steering changes go to the server immediately and take effect at the
 * next generation boundary; once a run reaches a terminal status the
 * panel flips read-only for it. */
export class ControlPanel {
  instanceId: string | null = null;
  runId: string | null = null;

  private readonly api: ApiClient;
  private readonly callbacks: PanelCallbacks;

  private readonly instanceText: HTMLTextAreaElement;
  private readonly uploadButton: HTMLButtonElement;
  private readonly populationInput: HTMLInputElement;
  private readonly generationsInput: HTMLInputElement;
  private readonly seedInput: HTMLInputElement;
  private readonly startButton: HTMLButtonElement;
  private readonly pauseButton: HTMLButtonElement;
  private readonly resumeButton: HTMLButtonElement;
  private readonly cancelButton: HTMLButtonElement;
  private readonly mutationSlider: HTMLInputElement;
  private readonly crossoverSlider: HTMLInputElement;
  private readonly fMaxInput: HTMLInputElement;
  private readonly fMinInput: HTMLInputElement;
  private readonly statusLine: HTMLElement;
  private readonly errorLine: HTMLElement;

  constructor(root: HTMLElement, api: ApiClient, callbacks: PanelCallbacks = {}) {
    this.api = api;
    this.callbacks = callbacks;
    root.classList.add("control-panel");

    this.instanceText = document.createElement("textarea");
    this.instanceText.className = "instance-text";
    this.instanceText.rows = 6;
    this.uploadButton = this.button(root, "upload", "Upload instance", () => this.upload());
    root.insertBefore(this.instanceText, this.uploadButton);

    this.populationInput = this.numberInput(root, "population", 60);
    this.generationsInput = this.numberInput(root, "generations", 200);
    this.seedInput = this.numberInput(root, "seed", 1);
    this.startButton = this.button(root, "start", "Start run", () => this.start());

    this.pauseButton = this.button(root, "pause", "Pause", () => this.lifecycle("pause"));
    this.resumeButton = this.button(root, "resume", "Resume", () => this.lifecycle("resume"));
    this.cancelButton = this.button(root, "cancel", "Cancel", () => this.lifecycle("cancel"));

    this.mutationSlider = this.slider(root, "mutation-rate", 0.1);
    this.crossoverSlider = this.slider(root, "crossover-rate", 0.9);
    this.mutationSlider.addEventListener("change", () => {
      void this.patch({ mutation_rate: Number(this.mutationSlider.value) });
    });
    this.crossoverSlider.addEventListener("change", () => {
      void this.patch({ crossover_rate: Number(this.crossoverSlider.value) });
    });

    this.fMaxInput = this.numberInput(root, "f-max", 100);
    this.fMinInput = this.numberInput(root, "f-min", 1);
    const sendPoles = () => {
      void this.patch({
        fitness_params: {
          f_max: Number(this.fMaxInput.value),
          f_min: Number(this.fMinInput.value),
        },
      });
    };
    this.fMaxInput.addEventListener("change", sendPoles);
    this.fMinInput.addEventListener("change", sendPoles);

    this.statusLine = document.createElement("span");
    this.statusLine.className = "run-status";
    this.statusLine.textContent = "no run";
    root.appendChild(this.statusLine);

    this.errorLine = document.createElement("div");
    this.errorLine.className = "panel-error";
    root.appendChild(this.errorLine);

    this.setStatus(null);
  }

  private button(root: HTMLElement, className: string, label: string, onClick: () => void): HTMLButtonElement {
    const el = document.createElement("button");
    el.className = className;
    el.textContent = label;
    el.addEventListener("click", onClick);
    root.appendChild(el);
    return el;
  }

  private numberInput(root: HTMLElement, className: string, value: number): HTMLInputElement {
    const el = document.createElement("input");
    el.type = "number";
    el.className = className;
    el.value = String(value);
    root.appendChild(el);
    return el;
  }

  private slider(root: HTMLElement, className: string, value: number): HTMLInputElement {
    const el = document.createElement("input");
    el.type = "range";
    el.className = className;
    el.min = "0";
    el.max = "1";
    el.step = "0.01";
    el.value = String(value);
    root.appendChild(el);
    return el;
  }

  private async upload(): Promise<void> {
    try {
      const summary = await this.api.uploadInstance(this.instanceText.value);
      this.instanceId = summary.instance_id;
      this.errorLine.textContent = "";
      this.statusLine.textContent = `instance ${summary.name} (${summary.customer_count} customers)`;
      this.callbacks.onInstance?.(summary);
    } catch (err) {
      this.showError(err);
    }
  }

  private async start(): Promise<void> {
    if (!this.instanceId) {
      this.errorLine.textContent = "upload an instance first";
      return;
    }
    try {
      const run = await this.api.createRun(this.instanceId, {
        population_size: Number(this.populationInput.value),
        generations: Number(this.generationsInput.value),
        mutation_rate: Number(this.mutationSlider.value),
        crossover_rate: Number(this.crossoverSlider.value),
        fitness_params: {
          f_max: Number(this.fMaxInput.value),
          f_min: Number(this.fMinInput.value),
        },
        rng_seed: Number(this.seedInput.value),
      });
      this.runId = run.run_id;
      this.errorLine.textContent = "";
      this.setStatus(run.status);
      this.applyConfig(run.config);
      this.callbacks.onRun?.(run);
    } catch (err) {
      this.showError(err);
    }
  }

  private async lifecycle(action: "pause" | "resume" | "cancel"): Promise<void> {
    if (!this.runId) return;
    try {
      const run = await this.api[action](this.runId);
      this.errorLine.textContent = "";
      this.setStatus(run.status);
    } catch (err) {
      this.showError(err);
    }
  }

  private async patch(changes: Partial<RunConfig>): Promise<void> {
    if (!this.runId) return;
    try {
      await this.api.patchConfig(this.runId, changes);
      this.errorLine.textContent = "";
    } catch (err) {
      this.showError(err);
    }
  }

  private showError(err: unknown): void {
    this.errorLine.textContent = err instanceof Error ? err.message : String(err);
  }

  /** Reflect a status change; null means no run exists yet. */
  setStatus(status: RunStatus | null): void {
    if (status) this.statusLine.textContent = status;
    const terminal = status !== null && TERMINAL_STATUSES.includes(status);
    const noRun = status === null || terminal;
    this.pauseButton.disabled = status !== "Running";
    this.resumeButton.disabled = status !== "Paused";
    this.cancelButton.disabled = noRun;
    for (const el of [this.mutationSlider, this.crossoverSlider, this.fMaxInput, this.fMinInput]) {
      el.disabled = noRun;
    }
    if (terminal) this.runId = null;
  }

  /** Mirror server-side config into the steering controls, e.g. when a
   * config frame confirms an applied change. */
  applyConfig(config: RunConfig): void {
    this.populationInput.value = String(config.population_size);
    this.generationsInput.value = String(config.generations);
    this.seedInput.value = String(config.rng_seed);
    this.mutationSlider.value = String(config.mutation_rate);
    this.crossoverSlider.value = String(config.crossover_rate);
    this.fMaxInput.value = String(config.fitness_params.f_max);
    this.fMinInput.value = String(config.fitness_params.f_min);
  }
}
