import type {
  FrontDocument,
  InstanceSummary,
  RunConfig,
  RunHandle,
  TraceResponse,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
    this.name = "ApiError";
  }
}

export interface PatchResponse extends RunHandle {
  pending_config: Partial<RunConfig>;
  applies: string;
}

/** Thin JSON client for the solver service. All mutations go through
 * here; the views never talk to the network themselves. */
export class ApiClient {
  constructor(
    readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown, rawBody?: string): Promise<T> {
    const init: RequestInit = { method };
    if (rawBody !== undefined) {
      init.body = rawBody;
      init.headers = { "content-type": "text/plain" };
    } else if (body !== undefined) {
      init.body = JSON.stringify(body);
      init.headers = { "content-type": "application/json" };
    }
    const response = await this.fetchImpl(this.baseUrl + path, init);
    const text = await response.text();
    if (!response.ok) {
      let detail = text;
      try {
        const parsed = JSON.parse(text) as { detail?: string };
        if (typeof parsed.detail === "string") detail = parsed.detail;
      } catch {
        // not JSON, keep the raw body
      }
      throw new ApiError(response.status, detail);
    }
    return JSON.parse(text) as T;
  }

  uploadInstance(solomonText: string): Promise<InstanceSummary> {
    return this.request("POST", "/instances", undefined, solomonText);
  }

  getInstance(instanceId: string): Promise<InstanceSummary> {
    return this.request("GET", `/instances/${instanceId}`);
  }

  createRun(
    instanceId: string,
    config: Partial<RunConfig>,
    throttleMs = 0,
  ): Promise<RunHandle> {
    return this.request("POST", "/runs", {
      instance_id: instanceId,
      config,
      throttle_ms: throttleMs,
    });
  }

  getRun(runId: string): Promise<RunHandle> {
    return this.request("GET", `/runs/${runId}`);
  }

  pause(runId: string): Promise<RunHandle> {
    return this.request("POST", `/runs/${runId}/pause`);
  }

  resume(runId: string): Promise<RunHandle> {
    return this.request("POST", `/runs/${runId}/resume`);
  }

  cancel(runId: string): Promise<RunHandle> {
    return this.request("POST", `/runs/${runId}/cancel`);
  }

  patchConfig(runId: string, patch: Partial<RunConfig>): Promise<PatchResponse> {
    return this.request("PATCH", `/runs/${runId}/config`, patch);
  }

  getFront(runId: string): Promise<FrontDocument> {
    return this.request("GET", `/runs/${runId}/front`);
  }

  getTrace(runId: string, alternative: number): Promise<TraceResponse> {
    return this.request("GET", `/runs/${runId}/alternatives/${alternative}/trace`);
  }
}
