import type { OrchestratorApi } from "./api.js";
import { ConsoleViewModel } from "./viewmodel.js";
import type { SliceIntentPayload } from "./types.js";

export interface ControllerOptions {
  pollIntervalMs?: number;
  windowSize?: number;
}

/** Glue between the API client and the view model: keeps the session in
 * sync with the server, resuming from the last seen sequence numbers so a
 * reconnect produces neither gaps nor duplicates. */
export class ConsoleController {
  readonly vm: ConsoleViewModel;
  readonly pollIntervalMs: number;
  private timer: ReturnType<typeof setInterval> | null = null;

  constructor(private readonly api: OrchestratorApi, options: ControllerOptions = {}) {
    this.vm = new ConsoleViewModel(options.windowSize ?? 300);
    this.pollIntervalMs = options.pollIntervalMs ?? 1000;
  }

  async refreshStatic(): Promise<void> {
    this.vm.applyTopology(await this.api.topology());
    this.vm.applySliceRows((await this.api.listSlices()).slices);
  }

  /** One sync pass. Applies every frame/event past the last seen sequence
   * numbers; marks the view stale on failure and fresh again on success. */
  async pollOnce(): Promise<number> {
    try {
      const metrics = await this.api.metricsSince(this.vm.latestFrameSeq);
      let applied = 0;
      for (const frame of metrics.frames) {
        if (this.vm.applyFrame(frame)) {
          applied += 1;
        }
      }
      const events = await this.api.eventsSince(this.vm.latestEventSeq);
      this.vm.applyEvents(events.events);
      if (applied > 0 || events.events.length > 0) {
        this.vm.applySliceRows((await this.api.listSlices()).slices);
      }
      this.vm.setStale(false);
      return applied;
    } catch (error) {
      this.vm.setStale(true);
      throw error;
    }
  }

  startPolling(onUpdate: () => void): void {
    this.stopPolling();
    this.timer = setInterval(() => {
      this.pollOnce()
        .then(() => onUpdate())
        .catch(() => onUpdate()); // stale banner still needs a repaint
    }, this.pollIntervalMs);
  }

  stopPolling(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }

  async preview(intent: SliceIntentPayload): Promise<void> {
    this.vm.whatifError = null;
    try {
      this.vm.whatif = await this.api.whatifPlacement(intent);
    } catch (error) {
      this.vm.whatif = null;
      this.vm.whatifError = String(error); // server message shown verbatim
    }
  }

  async commit(intent: SliceIntentPayload): Promise<void> {
    try {
      const answer = await this.api.submitIntent(intent);
      this.vm.submitOutcome = answer.admitted
        ? `admitted ${answer.slice} at ${answer.placement?.pool_cuup}/${answer.placement?.pool_upf}`
        : `rejected ${answer.slice}: ${answer.reason} – ${answer.detail}`;
    } catch (error) {
      this.vm.submitOutcome = String(error);
    }
  }
}
