import type {
  EventRecordPayload,
  MetricsFramePayload,
  SliceRowPayload,
  TopologyPayload,
  WhatIfAnswer,
} from "./types.js";

export interface BadgeState {
  violated: boolean;
  tp_violation_pct: number;
  delay_violated: boolean;
}

/** Client-side session state. Frames and events are appended strictly by
 * sequence number (duplicates dropped, order enforced), and the timeline
 * keeps a sliding window so charts stay responsive. */
export class ConsoleViewModel {
  frames: MetricsFramePayload[] = [];
  events: EventRecordPayload[] = [];
  sliceRows = new Map<string, SliceRowPayload>();
  topology: TopologyPayload | null = null;
  whatif: WhatIfAnswer | null = null;
  whatifError: string | null = null;
  submitOutcome: string | null = null;
  stale = false;
  latestFrameSeq = -1;
  latestEventSeq = -1;

  constructor(readonly windowSize = 300) {}

  applyFrame(frame: MetricsFramePayload): boolean {
    if (frame.seq <= this.latestFrameSeq) {
      return false; // duplicate delivery after a resume; charts must not double-count
    }
    this.frames.push(frame);
    this.latestFrameSeq = frame.seq;
    if (this.frames.length > this.windowSize) {
      this.frames.splice(0, this.frames.length - this.windowSize);
    }
    return true;
  }

  applyEvents(events: EventRecordPayload[]): void {
    for (const event of events) {
      if (event.seq <= this.latestEventSeq) {
        continue;
      }
      this.events.push(event);
      this.latestEventSeq = event.seq;
    }
    if (this.events.length > 1000) {
      this.events.splice(0, this.events.length - 1000);
    }
  }

  applySliceRows(rows: SliceRowPayload[]): void {
    this.sliceRows = new Map(rows.map((row) => [row.slice, row]));
  }

  applyTopology(topology: TopologyPayload): void {
    this.topology = topology;
  }

  setStale(stale: boolean): void {
    this.stale = stale;
  }

  latestFrame(): MetricsFramePayload | null {
    return this.frames.length ? this.frames[this.frames.length - 1] : null;
  }

  /** Badge state straight from the latest frame; shown iff the server
   * reported a throughput or delay violation. */
  badge(sliceId: string): BadgeState | null {
    const frame = this.latestFrame();
    const sample = frame?.slices[sliceId];
    if (!sample) {
      return null;
    }
    return {
      violated: sample.tp_violation_pct > 0 || sample.delay_violated,
      tp_violation_pct: sample.tp_violation_pct,
      delay_violated: sample.delay_violated,
    };
  }

  sliceIds(): string[] {
    const ids = new Set<string>(this.sliceRows.keys());
    const frame = this.latestFrame();
    if (frame) {
      for (const id of Object.keys(frame.slices)) {
        ids.add(id);
      }
    }
    return [...ids].sort();
  }

  throughputSeries(sliceId: string): Array<[number, number]> {
    const points: Array<[number, number]> = [];
    for (const frame of this.frames) {
      const sample = frame.slices[sliceId];
      if (sample) {
        points.push([frame.t_ms, sample.achieved_mbps]);
      }
    }
    return points;
  }

  rttSeries(sliceId: string): Array<[number, number]> {
    const points: Array<[number, number]> = [];
    for (const frame of this.frames) {
      const sample = frame.slices[sliceId];
      if (sample) {
        points.push([frame.t_ms, sample.rtt_ms]);
      }
    }
    return points;
  }
}
