import type { FetchLike } from "../src/api.js";
import type { SourceFactory, StreamSource } from "../src/events.js";
import type {
  FrontDocument,
  FrontEntry,
  InstanceSummary,
  ObjectiveArray,
  RunConfig,
  RunHandle,
  Snapshot,
  StatusFrame,
  Visit,
} from "../src/types.js";
import { OBJECTIVE_NAMES } from "../src/types.js";

/** Worked four-vector population. A dominates B, C and D; B is also
 * dominated by C. Counts [0, 2, 1, 1], so with the default poles the
 * fitness values are [100, 1, 50.5, 50.5] and the archive holds only A. */
export const VECTOR_A: ObjectiveArray = [1, 1, 1, 1];
export const VECTOR_B: ObjectiveArray = [2, 2, 2, 2];
export const VECTOR_C: ObjectiveArray = [1, 2, 1, 2];
export const VECTOR_D: ObjectiveArray = [3, 1, 1, 1];

export function makeSnapshot(generationIndex: number, overrides: Partial<Snapshot> = {}): Snapshot {
  return {
    generation_index: generationIndex,
    population_objectives: [VECTOR_A, VECTOR_B, VECTOR_C, VECTOR_D],
    domination_counts: [0, 2, 1, 1],
    fitness_values: [100, 1, 50.5, 50.5],
    archive_objectives: [VECTOR_A],
    best_per_objective: OBJECTIVE_NAMES.map((objective) => ({
      objective,
      values: VECTOR_A,
      individual: 0,
    })),
    elapsed_seconds: 0.01 * (generationIndex + 1),
    ...overrides,
  };
}

export const DEFAULT_CONFIG: RunConfig = {
  population_size: 6,
  generations: 5,
  crossover_rate: 0.9,
  mutation_rate: 0.1,
  fitness_params: { f_max: 100, f_min: 1 },
  timing_policy: "wait",
  rng_seed: 4,
  archive_capacity: null,
  elitism_count: 1,
  selection_scheme: "roulette",
};

export function makeRunHandle(overrides: Partial<RunHandle> = {}): RunHandle {
  return {
    run_id: "r1",
    instance_id: "i1",
    status: "Running",
    config: { ...DEFAULT_CONFIG, fitness_params: { ...DEFAULT_CONFIG.fitness_params } },
    latest_snapshot_index: 0,
    throttle_ms: 0,
    ...overrides,
  };
}

export function makeStatusFrame(overrides: Partial<StatusFrame> = {}): StatusFrame {
  return { status: "Running", cause: "created", generation_index: null, ...overrides };
}

export function makeInstance(customerCount = 4): InstanceSummary {
  const customers = [];
  for (let i = 1; i <= customerCount; i++) {
    customers.push({
      id: i,
      x: 10 + ((i * 17) % 60),
      y: 12 + ((i * 29) % 55),
      demand: 10,
      ready_time: 0,
      due_time: 1000,
      service_time: 90,
    });
  }
  return {
    instance_id: "i1",
    name: "tiny",
    customer_count: customerCount,
    vehicle_capacity: 50,
    max_vehicles: Math.max(2, Math.ceil(customerCount / 2)),
    depot: { x: 40, y: 50 },
    customers,
  };
}

export function makeVisit(customerId: number, overrides: Partial<Visit> = {}): Visit {
  return {
    customer_id: customerId,
    route_index: 0,
    position: 0,
    arrival: 10,
    service_start: 10,
    departure: 100,
    lateness: 0,
    earliness: 0,
    violation: 0,
    ...overrides,
  };
}

/** Violation-free alternative; the distance has enough digits to catch
 * any client-side rounding. */
export function makeCleanEntry(): FrontEntry {
  return {
    objectives: {
      total_distance: 123.456789012345,
      vehicle_count: 2,
      total_tw_violation: 0,
      violated_tw_count: 0,
    },
    routes: [
      [1, 2],
      [3, 4],
    ],
    trace: [
      makeVisit(1, { route_index: 0, position: 0 }),
      makeVisit(2, { route_index: 0, position: 1 }),
      makeVisit(3, { route_index: 1, position: 0 }),
      makeVisit(4, { route_index: 1, position: 1 }),
    ],
  };
}

/** Shorter but late alternative, mutually non-dominated with the clean
 * one: visits 1 and 3 are late, visit 2 is early. */
export function makeViolatedEntry(): FrontEntry {
  return {
    objectives: {
      total_distance: 80,
      vehicle_count: 2,
      total_tw_violation: 36,
      violated_tw_count: 3,
    },
    routes: [
      [1, 2, 3],
      [4],
    ],
    trace: [
      makeVisit(1, { position: 0, lateness: 2, violation: 2 }),
      makeVisit(2, { position: 1, earliness: 4, violation: 4 }),
      makeVisit(3, { position: 2, lateness: 30, violation: 30 }),
      makeVisit(4, { route_index: 1, position: 0 }),
    ],
  };
}

/** One route over n customers whose violations ramp 1..n, so the 95th
 * percentile sits below the maximum and the tallest bars get clipped. */
export function makeRampEntry(customerCount: number): FrontEntry {
  const trace = [];
  const route = [];
  for (let i = 1; i <= customerCount; i++) {
    route.push(i);
    trace.push(makeVisit(i, { position: i - 1, lateness: i, violation: i }));
  }
  const total = (customerCount * (customerCount + 1)) / 2;
  return {
    objectives: {
      total_distance: 200,
      vehicle_count: 1,
      total_tw_violation: total,
      violated_tw_count: customerCount,
    },
    routes: [route],
    trace,
  };
}

export function makeFrontDocument(entries: FrontEntry[]): FrontDocument {
  return {
    format: "vrptw-front/1",
    instance: "tiny",
    seed: 4,
    produced_at: "2026-01-01T00:00:00Z",
    config: { ...DEFAULT_CONFIG, fitness_params: { ...DEFAULT_CONFIG.fitness_params } },
    entries,
  };
}

/** Script-driven stand-in for EventSource. Tests call emit/fail. */
export class FakeStreamSource implements StreamSource {
  closed = false;

  constructor(
    readonly url: string,
    private readonly onFrame: (kind: string, seq: number, data: string) => void,
    private readonly onError: () => void,
  ) {}

  close(): void {
    this.closed = true;
  }

  emit(kind: "snapshot" | "status", seq: number, data: unknown): void {
    this.onFrame(kind, seq, JSON.stringify(data));
  }

  fail(): void {
    this.onError();
  }
}

export function makeFakeFactory(): {
  factory: SourceFactory;
  sources: FakeStreamSource[];
  urls: string[];
} {
  const sources: FakeStreamSource[] = [];
  const urls: string[] = [];
  const factory: SourceFactory = (url, onFrame, onError) => {
    const source = new FakeStreamSource(url, onFrame, onError);
    sources.push(source);
    urls.push(url);
    return source;
  };
  return { factory, sources, urls };
}

export interface RecordedRequest {
  method: string;
  url: string;
  body: string | null;
}

/** In-memory stand-in for the solver service's JSON endpoints. Records
 * every request so tests can assert on what the UI sent. */
export function makeMockServer(front?: FrontDocument) {
  const requests: RecordedRequest[] = [];
  const instance = makeInstance();
  const handle = makeRunHandle();
  const frontDoc = front ?? makeFrontDocument([makeCleanEntry(), makeViolatedEntry()]);

  const respond = (payload: unknown, status = 200) =>
    new Response(JSON.stringify(payload), {
      status,
      headers: { "content-type": "application/json" },
    });

  const fetchImpl: FetchLike = (url, init = {}) => {
    const method = (init.method ?? "GET").toUpperCase();
    const body = typeof init.body === "string" ? init.body : null;
    requests.push({ method, url, body });

    if (method === "POST" && url.endsWith("/instances")) return Promise.resolve(respond(instance));
    if (method === "POST" && url.endsWith("/runs")) return Promise.resolve(respond(handle));
    if (method === "POST" && /\/runs\/[^/]+\/pause$/.test(url)) {
      return Promise.resolve(respond(makeRunHandle({ status: "Paused" })));
    }
    if (method === "POST" && /\/runs\/[^/]+\/resume$/.test(url)) {
      return Promise.resolve(respond(makeRunHandle({ status: "Running" })));
    }
    if (method === "POST" && /\/runs\/[^/]+\/cancel$/.test(url)) {
      return Promise.resolve(respond(makeRunHandle({ status: "Cancelled" })));
    }
    if (method === "PATCH" && /\/runs\/[^/]+\/config$/.test(url)) {
      return Promise.resolve(
        respond({
          ...makeRunHandle(),
          pending_config: body ? JSON.parse(body) : {},
          applies: "next generation boundary",
        }),
      );
    }
    if (method === "GET" && /\/runs\/[^/]+\/front$/.test(url)) return Promise.resolve(respond(frontDoc));
    if (method === "GET" && /\/instances\/[^/]+$/.test(url)) return Promise.resolve(respond(instance));
    return Promise.resolve(respond({ detail: `no handler for ${method} ${url}` }, 404));
  };

  return { fetchImpl, requests, instance, handle, frontDoc };
}

export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
