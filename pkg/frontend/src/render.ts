import type { ConsoleViewModel } from "./viewmodel.js";
import type { MetricsFramePayload } from "./types.js";

function esc(value: unknown): string {
  return String(value)
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function fmt(value: number | undefined, digits = 1): string {
  return value === undefined ? "-" : value.toFixed(digits);
}

const SERIES_COLORS = ["#2563eb", "#dc2626", "#16a34a", "#9333ea", "#ea580c", "#0891b2"];

export function badgeHtml(vm: ConsoleViewModel, sliceId: string): string {
  const badge = vm.badge(sliceId);
  if (!badge) {
    return `<span class="badge" data-testid="badge-${esc(sliceId)}" data-violated="none">–</span>`;
  }
  if (!badge.violated) {
    return `<span class="badge ok" data-testid="badge-${esc(sliceId)}" data-violated="false">OK</span>`;
  }
  const delay = badge.delay_violated ? " +delay" : "";
  return (
    `<span class="badge violated" data-testid="badge-${esc(sliceId)}" data-violated="true">` +
    `${fmt(badge.tp_violation_pct)}%${delay}</span>`
  );
}

export function sliceTableHtml(vm: ConsoleViewModel): string {
  const frame = vm.latestFrame();
  const rows = vm.sliceIds().map((sliceId) => {
    const row = vm.sliceRows.get(sliceId);
    const sample = frame?.slices[sliceId];
    const intent = row?.intent;
    const sla = intent
      ? `${esc(intent.delay_min_ms)}/${esc(intent.delay_max_ms)} ms · ${esc(intent.tp_min_mbps)}/${esc(intent.tp_max_mbps)} Mbps · p${esc(intent.priority)}`
      : "-";
    const dc = row?.placement
      ? row.placement.pool_cuup === row.placement.pool_upf
        ? esc(row.placement.pool_cuup)
        : `${esc(row.placement.pool_cuup)}/${esc(row.placement.pool_upf)}`
      : sample
        ? esc(sample.pool_cuup)
        : "-";
    return `<tr data-testid="slice-row-${esc(sliceId)}">
      <td>${esc(row?.label ?? sample?.label ?? sliceId)}</td>
      <td>${esc(row?.lifecycle ?? "-")}</td>
      <td class="sla">${sla}</td>
      <td>${dc}</td>
      <td>${esc(row?.placement?.prb_floor ?? sample?.prb_floor ?? "-")}</td>
      <td data-testid="tp-${esc(sliceId)}">${fmt(sample?.achieved_mbps)}</td>
      <td data-testid="rtt-${esc(sliceId)}">${fmt(sample?.rtt_ms, 0)}</td>
      <td>${badgeHtml(vm, sliceId)}</td>
    </tr>`;
  });
  return `<table class="slices" data-testid="slice-table">
    <thead><tr>
      <th>Slice</th><th>Lifecycle</th><th>SLA (delay · throughput · prio)</th>
      <th>DC</th><th>PRB floor</th><th>Mbps</th><th>RTT</th><th>SLA badge</th>
    </tr></thead>
    <tbody>${rows.join("")}</tbody>
  </table>`;
}

export function topologyHtml(vm: ConsoleViewModel): string {
  if (!vm.topology) {
    return `<p class="muted">topology not loaded</p>`;
  }
  const frame = vm.latestFrame();
  const pools = vm.topology.pools.map((pool) => {
    const util = frame?.pool_utilization[pool.id];
    const pct = util === undefined ? 0 : util * 100;
    return `<div class="pool" data-testid="pool-${esc(pool.id)}">
      <span class="pool-name">${esc(pool.id)} <em>(${esc(pool.tier)})</em></span>
      <span class="bar"><span class="fill" style="width:${pct.toFixed(1)}%"></span></span>
      <span class="pct" data-testid="util-${esc(pool.id)}">${util === undefined ? "-" : pct.toFixed(1) + "%"}</span>
    </div>`;
  });
  const links = vm.topology.links.pairs.map(
    (pair) => `<li>${esc(pair.a)} ↔ ${esc(pair.b)}: ${esc(pair.one_way_ms)} ms</li>`,
  );
  return `<div class="topology">
    ${pools.join("")}
    <ul class="links">${links.join("")}
      <li>radio leg: ${esc(vm.topology.links.radio_delay_ms)} ms · core leg: ${esc(vm.topology.links.core_delay_ms)} ms</li>
    </ul>
  </div>`;
}

function polyline(points: Array<[number, number]>, tMin: number, tMax: number, yMax: number, color: string): string {
  if (!points.length) {
    return "";
  }
  const spanT = Math.max(1, tMax - tMin);
  const coords = points
    .map(([t, y]) => {
      const x = ((t - tMin) / spanT) * 580 + 10;
      const yPix = 190 - (y / Math.max(1e-9, yMax)) * 180;
      return `${x.toFixed(1)},${yPix.toFixed(1)}`;
    })
    .join(" ");
  return `<polyline fill="none" stroke="${color}" stroke-width="1.5" points="${coords}" />`;
}

export function chartHtml(vm: ConsoleViewModel, metric: "throughput" | "rtt"): string {
  const ids = vm.sliceIds();
  const series = ids.map((id) => (metric === "throughput" ? vm.throughputSeries(id) : vm.rttSeries(id)));
  const all = series.flat();
  if (!all.length) {
    return `<svg class="chart" data-testid="chart-${metric}" viewBox="0 0 600 200"></svg>`;
  }
  const tMin = Math.min(...all.map(([t]) => t));
  const tMax = Math.max(...all.map(([t]) => t));
  const yMax = Math.max(...all.map(([, y]) => y)) * 1.05;
  const lines = series.map((pts, i) => polyline(pts, tMin, tMax, yMax, SERIES_COLORS[i % SERIES_COLORS.length]));
  const legend = ids.map(
    (id, i) =>
      `<text x="15" y="${14 + i * 12}" fill="${SERIES_COLORS[i % SERIES_COLORS.length]}" font-size="10">${esc(
        vm.sliceRows.get(id)?.label ?? id,
      )}</text>`,
  );
  return `<svg class="chart" data-testid="chart-${metric}" viewBox="0 0 600 200">${lines.join("")}${legend.join("")}</svg>`;
}

export function whatifHtml(vm: ConsoleViewModel): string {
  if (vm.whatifError) {
    return `<p class="error" data-testid="whatif">${esc(vm.whatifError)}</p>`;
  }
  if (!vm.whatif) {
    return `<p class="muted" data-testid="whatif">no preview yet</p>`;
  }
  if (!vm.whatif.feasible) {
    return `<p class="error" data-testid="whatif">no feasible placement: ${esc(vm.whatif.detail ?? vm.whatif.reason ?? "")}</p>`;
  }
  const p = vm.whatif.placement;
  const dc = p && p.pool_cuup === p.pool_upf ? p.pool_cuup : `${p?.pool_cuup}/${p?.pool_upf}`;
  return `<p class="preview" data-testid="whatif">${esc(dc)}, ${fmt(vm.whatif.rtt_ms, 0)} ms, ` +
    `$${fmt(vm.whatif.daily_cost, 4)}/day, floor ${esc(vm.whatif.prb_floor ?? "-")} PRBs</p>`;
}

export function staleBannerHtml(vm: ConsoleViewModel): string {
  return vm.stale
    ? `<div class="stale" data-testid="stale-banner">connection lost – showing stale data, reconnecting…</div>`
    : "";
}

export function renderConsole(root: HTMLElement, vm: ConsoleViewModel): void {
  const frame: MetricsFramePayload | null = vm.latestFrame();
  root.innerHTML = `
    ${staleBannerHtml(vm)}
    <header>
      <h1>Slice operations</h1>
      <span class="clock" data-testid="clock">${frame ? `t = ${frame.t_ms / 1000}s` : "no frames"}</span>
      <span class="seq" data-testid="event-seq">events ≤ ${vm.latestEventSeq}</span>
      <span class="cost" data-testid="cost">cost $${fmt(frame?.cumulative_cost, 4)}</span>
    </header>
    <section class="panel">${sliceTableHtml(vm)}</section>
    <section class="panel split">
      <div><h2>Throughput (Mbps)</h2>${chartHtml(vm, "throughput")}</div>
      <div><h2>RTT (ms)</h2>${chartHtml(vm, "rtt")}</div>
    </section>
    <section class="panel">
      <h2>Pools & links</h2>
      ${topologyHtml(vm)}
    </section>
    <section class="panel">
      <h2>What-if preview</h2>
      ${whatifHtml(vm)}
      ${vm.submitOutcome ? `<p class="submit-outcome" data-testid="submit-outcome">${esc(vm.submitOutcome)}</p>` : ""}
    </section>
  `;
}
