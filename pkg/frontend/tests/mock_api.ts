import type { OrchestratorApi } from "../src/api.js";
import type {
  EventRecordPayload,
  MetricsFramePayload,
  SliceIntentPayload,
  SliceRowPayload,
  SliceSamplePayload,
  SubmitAnswer,
  TopologyPayload,
  WhatIfAnswer,
} from "../src/types.js";

export function mkSample(partial: Partial<SliceSamplePayload> = {}): SliceSamplePayload {
  return {
    achieved_mbps: 100,
    rtt_ms: 20,
    granted_prbs: 40,
    prb_floor: 15,
    demand_mbps: 250,
    cpu_quota_ms: { "CU-UP": 10, UPF: 12 },
    cpu_used_ms: { "CU-UP": 9, UPF: 11 },
    tp_violation_pct: 0,
    delay_violated: false,
    pool_cuup: "edge",
    pool_upf: "edge",
    label: "S?",
    ...partial,
  };
}

export function mkFrame(seq: number, slices: Record<string, SliceSamplePayload>): MetricsFramePayload {
  return {
    seq,
    t_ms: seq * 1000,
    slices,
    pool_utilization: { edge: 0.5, regional: 0.2, central: 0.1 },
    cumulative_cost: seq * 0.001,
  };
}

export const topologyFixture: TopologyPayload = {
  pools: [
    { id: "edge", tier: "Edge", cpu_capacity_ms: 500, ram_capacity_gb: 5, cpu_rate: 0.5, ram_rate: 0.1, bw_rate: 0.1, fixed_overhead_cpu_ms: 150, dataplane_budget_ms: 230 },
    { id: "regional", tier: "Regional", cpu_capacity_ms: 2000, ram_capacity_gb: 20, cpu_rate: 0.05, ram_rate: 0.01, bw_rate: 0.1, fixed_overhead_cpu_ms: 150 },
    { id: "central", tier: "Central", cpu_capacity_ms: 10000, ram_capacity_gb: 100, cpu_rate: 0.001, ram_rate: 0.002, bw_rate: 0.1, fixed_overhead_cpu_ms: 150 },
  ],
  links: {
    radio_delay_ms: 8,
    core_delay_ms: 2,
    pairs: [
      { a: "edge", b: "regional", one_way_ms: 20 },
      { a: "central", b: "edge", one_way_ms: 30 },
      { a: "central", b: "regional", one_way_ms: 10 },
    ],
  },
  cell: { total_prbs: 106, prb_budget: 100, cell_max_mbps: 250, prb_quantum: 5 },
  du_pool: "edge",
};

/** Scriptable in-memory server double honouring the since=seq contract. */
export class MockApi implements OrchestratorApi {
  frames: MetricsFramePayload[] = [];
  events: EventRecordPayload[] = [];
  rows: SliceRowPayload[] = [];
  whatifAnswer: WhatIfAnswer = { feasible: false, reason: "NoFeasiblePlacement", detail: "mock" };
  submitAnswer: SubmitAnswer = { admitted: false, slice: "?", reason: "mock", detail: "mock" };
  failures = 0; // next N metric polls fail, simulating a dropped connection
  calls: string[] = [];

  async metricsSince(seq: number) {
    this.calls.push(`metrics>${seq}`);
    if (this.failures > 0) {
      this.failures -= 1;
      throw new Error("connection refused");
    }
    const frames = this.frames.filter((f) => f.seq > seq);
    return { frames, latest_seq: this.frames.length ? this.frames[this.frames.length - 1].seq : -1, t_ms: 0 };
  }

  async eventsSince(seq: number) {
    this.calls.push(`events>${seq}`);
    return {
      events: this.events.filter((e) => e.seq > seq),
      latest_seq: this.events.length ? this.events[this.events.length - 1].seq : -1,
    };
  }

  async listSlices() {
    return { slices: this.rows };
  }

  async topology() {
    return topologyFixture;
  }

  async whatifPlacement(_intent: SliceIntentPayload) {
    this.calls.push("whatif");
    return this.whatifAnswer;
  }

  async submitIntent(_intent: SliceIntentPayload) {
    this.calls.push("submit");
    return this.submitAnswer;
  }

  async deleteSlice(sliceId: string) {
    return { slice: sliceId, lifecycle: "Terminated" };
  }
}
