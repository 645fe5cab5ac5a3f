/** Payload shapes of the orchestrator HTTP API. The console renders these
 * verbatim; it never recomputes model math on the client. */

export interface SliceIntentPayload {
  sst: number;
  sd: number;
  delay_min_ms: number;
  delay_max_ms: number;
  tp_min_mbps: number;
  tp_max_mbps: number;
  priority: number;
  label?: string;
}

export interface PlacementPayload {
  pool_cuup: string;
  pool_upf: string;
  prb_floor: number;
  predicted_rtt_ms: number;
}

export interface SliceRowPayload {
  slice: string;
  label: string;
  lifecycle: string;
  intent: SliceIntentPayload;
  placement?: PlacementPayload;
}

export interface SliceSamplePayload {
  achieved_mbps: number;
  rtt_ms: number;
  granted_prbs: number;
  prb_floor: number;
  demand_mbps: number;
  cpu_quota_ms: Record<string, number>;
  cpu_used_ms: Record<string, number>;
  tp_violation_pct: number;
  delay_violated: boolean;
  pool_cuup: string;
  pool_upf: string;
  label: string;
}

export interface MetricsFramePayload {
  seq: number;
  t_ms: number;
  slices: Record<string, SliceSamplePayload>;
  pool_utilization: Record<string, number>;
  cumulative_cost: number;
}

export interface PoolPayload {
  id: string;
  tier: string;
  cpu_capacity_ms: number;
  ram_capacity_gb: number;
  cpu_rate: number;
  ram_rate: number;
  bw_rate: number;
  fixed_overhead_cpu_ms: number;
  dataplane_budget_ms?: number;
}

export interface TopologyPayload {
  pools: PoolPayload[];
  links: {
    radio_delay_ms: number;
    core_delay_ms: number;
    pairs: { a: string; b: string; one_way_ms: number }[];
  };
  cell: { total_prbs: number; prb_budget: number; cell_max_mbps: number; prb_quantum: number };
  du_pool: string;
}

export interface WhatIfAnswer {
  feasible: boolean;
  reason?: string;
  detail?: string;
  placement?: PlacementPayload & { cpu_quota_ms?: Record<string, number> };
  rtt_ms?: number;
  daily_cost?: number;
  prb_floor?: number;
}

export interface SubmitAnswer {
  admitted: boolean;
  slice: string;
  reason?: string;
  detail?: string;
  placement?: PlacementPayload;
}

export interface EventRecordPayload {
  seq: number;
  t_ms: number;
  kind: string;
  interface: string;
  data: Record<string, unknown>;
}

export interface SessionInfo {
  scenario: string;
  running: boolean;
  t_ms: number;
  horizon_ms: number;
  tick_ms: number;
  assurance_enabled: boolean;
}
