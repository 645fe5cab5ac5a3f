import type {
  EventRecordPayload,
  MetricsFramePayload,
  SessionInfo,
  SliceIntentPayload,
  SliceRowPayload,
  SubmitAnswer,
  TopologyPayload,
  WhatIfAnswer,
} from "./types.js";

export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
    this.name = "ApiError";
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** The endpoint surface the console consumes (mockable in tests). */
export interface OrchestratorApi {
  listSlices(): Promise<{ slices: SliceRowPayload[] }>;
  topology(): Promise<TopologyPayload>;
  metricsSince(seq: number): Promise<{ frames: MetricsFramePayload[]; latest_seq: number; t_ms: number }>;
  eventsSince(seq: number): Promise<{ events: EventRecordPayload[]; latest_seq: number }>;
  whatifPlacement(intent: SliceIntentPayload): Promise<WhatIfAnswer>;
  submitIntent(intent: SliceIntentPayload): Promise<SubmitAnswer>;
  deleteSlice(sliceId: string): Promise<{ slice: string; lifecycle: string }>;
}

/** Thin typed client over the orchestrator endpoints. */
export class ApiClient implements OrchestratorApi {
  private readonly fetchImpl: FetchLike;

  constructor(readonly baseUrl: string, fetchImpl?: FetchLike) {
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method,
      headers: body === undefined ? undefined : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      throw new ApiError(await response.text(), response.status);
    }
    return (await response.json()) as T;
  }

  listSlices(): Promise<{ slices: SliceRowPayload[] }> {
    return this.request("GET", "/slices");
  }

  topology(): Promise<TopologyPayload> {
    return this.request("GET", "/topology");
  }

  metricsSince(seq: number): Promise<{ frames: MetricsFramePayload[]; latest_seq: number; t_ms: number }> {
    return this.request("GET", `/metrics?since=${seq}`);
  }

  eventsSince(seq: number): Promise<{ events: EventRecordPayload[]; latest_seq: number }> {
    return this.request("GET", `/events?since=${seq}`);
  }

  whatifPlacement(intent: SliceIntentPayload): Promise<WhatIfAnswer> {
    return this.request("POST", "/whatif/placement", intent);
  }

  submitIntent(intent: SliceIntentPayload): Promise<SubmitAnswer> {
    return this.request("POST", "/slices", intent);
  }

  deleteSlice(sliceId: string): Promise<{ slice: string; lifecycle: string }> {
    return this.request("DELETE", `/slices/${encodeURIComponent(sliceId)}`);
  }

  sessionInfo(): Promise<SessionInfo> {
    return this.request("GET", "/session");
  }

  sessionStart(): Promise<{ running: boolean }> {
    return this.request("POST", "/session/start");
  }

  sessionPause(): Promise<{ running: boolean }> {
    return this.request("POST", "/session/pause");
  }

  sessionStep(ticks = 1): Promise<{ advanced: number; t_ms: number }> {
    return this.request("POST", "/session/step", { ticks });
  }

  setAssurance(enabled: boolean): Promise<{ assurance_enabled: boolean }> {
    return this.request("POST", "/session/assurance", { enabled });
  }
}
