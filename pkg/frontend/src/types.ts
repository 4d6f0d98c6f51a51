/** Wire types mirroring the solver service's JSON payloads. */

/** Objective vectors travel as 4-arrays inside snapshots:
 * [total_distance, vehicle_count, total_tw_violation, violated_tw_count]. */
export type ObjectiveArray = [number, number, number, number];

export const OBJECTIVE_NAMES = [
  "total_distance",
  "vehicle_count",
  "total_tw_violation",
  "violated_tw_count",
] as const;

export type ObjectiveName = (typeof OBJECTIVE_NAMES)[number];

export const OBJECTIVE_LABELS: Record<ObjectiveName, string> = {
  total_distance: "distance",
  vehicle_count: "vehicles",
  total_tw_violation: "violation time",
  violated_tw_count: "violated windows",
};

/** The same vector in object form, used by front documents and traces. */
export interface Objectives {
  total_distance: number;
  vehicle_count: number;
  total_tw_violation: number;
  violated_tw_count: number;
}

export interface FitnessParams {
  f_max: number;
  f_min: number;
}

export interface RunConfig {
  population_size: number;
  generations: number;
  crossover_rate: number;
  mutation_rate: number;
  fitness_params: FitnessParams;
  timing_policy: string;
  rng_seed: number;
  archive_capacity: number | null;
  elitism_count: number;
  selection_scheme: string;
}

export type RunStatus = "Running" | "Paused" | "Cancelled" | "Finished";

export const TERMINAL_STATUSES: readonly RunStatus[] = ["Cancelled", "Finished"];

export interface RunHandle {
  run_id: string;
  instance_id: string;
  status: RunStatus;
  config: RunConfig;
  latest_snapshot_index: number;
  throttle_ms: number;
}

export interface BestPerObjective {
  objective: ObjectiveName;
  values: ObjectiveArray;
  individual: number;
}

export interface Snapshot {
  generation_index: number;
  population_objectives: ObjectiveArray[];
  domination_counts: number[];
  fitness_values: number[];
  archive_objectives: ObjectiveArray[];
  best_per_objective: BestPerObjective[];
  elapsed_seconds: number;
}

export interface StatusFrame {
  status: RunStatus;
  cause: "created" | "pause" | "resume" | "config" | "cancel" | "finished";
  generation_index?: number | null;
  config?: RunConfig;
}

export interface Visit {
  customer_id: number;
  route_index: number;
  position: number;
  arrival: number;
  service_start: number;
  departure: number;
  lateness: number;
  earliness: number;
  violation: number;
}

export interface FrontEntry {
  objectives: Objectives;
  routes: number[][];
  trace: Visit[];
}

export interface FrontDocument {
  format: string;
  instance: string;
  seed: number;
  produced_at: string;
  config: RunConfig;
  entries: FrontEntry[];
}

export interface CustomerRow {
  id: number;
  x: number;
  y: number;
  demand: number;
  ready_time: number;
  due_time: number;
  service_time: number;
}

export interface InstanceSummary {
  instance_id: string;
  name: string;
  customer_count: number;
  vehicle_capacity: number;
  max_vehicles: number;
  depot: { x: number; y: number };
  customers: CustomerRow[];
}

export interface TraceResponse {
  alternative: number;
  objectives: Objectives;
  routes: number[][];
  trace: Visit[];
}

export function objectivesToArray(o: Objectives): ObjectiveArray {
  return [o.total_distance, o.vehicle_count, o.total_tw_violation, o.violated_tw_count];
}

/** Stable key for set membership tests on objective vectors. */
export function vectorKey(v: ObjectiveArray): string {
  return JSON.stringify(v);
}
