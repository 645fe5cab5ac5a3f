import type { SliceIntentPayload } from "./types.js";

export interface IntentFormFields {
  sst: string;
  sd: string;
  delay_min_ms: string;
  delay_max_ms: string;
  tp_min_mbps: string;
  tp_max_mbps: string;
  priority: string;
  label: string;
}

export interface ValidationResult {
  ok: boolean;
  errors: Partial<Record<keyof IntentFormFields, string>>;
  intent?: SliceIntentPayload;
}

function num(raw: string): number | null {
  if (raw.trim() === "") {
    return null;
  }
  const value = Number(raw);
  return Number.isFinite(value) ? value : null;
}

function int(raw: string): number | null {
  const value = num(raw);
  return value !== null && Number.isInteger(value) ? value : null;
}

/** Client-side mirror of the server's intent invariants, so obvious
 * mistakes surface inline before any request is made. */
export function validateIntentForm(fields: IntentFormFields): ValidationResult {
  const errors: ValidationResult["errors"] = {};

  const sst = int(fields.sst);
  const sd = int(fields.sd);
  if (sst === null || sst < 0) errors.sst = "SST must be a nonnegative integer";
  if (sd === null || sd < 0) errors.sd = "SD must be a nonnegative integer";

  const delayMin = num(fields.delay_min_ms);
  const delayMax = num(fields.delay_max_ms);
  if (delayMin === null || delayMin < 0) errors.delay_min_ms = "delay min must be a nonnegative number";
  if (delayMax === null || delayMax < 0) errors.delay_max_ms = "delay max must be a nonnegative number";
  if (delayMin !== null && delayMax !== null && delayMin > delayMax) {
    errors.delay_max_ms = "delay max must be at least delay min";
  }

  const tpMin = num(fields.tp_min_mbps);
  const tpMax = num(fields.tp_max_mbps);
  if (tpMin === null || tpMin < 0) errors.tp_min_mbps = "throughput min must be a nonnegative number";
  if (tpMax === null || tpMax < 0) errors.tp_max_mbps = "throughput max must be a nonnegative number";
  if (tpMin !== null && tpMax !== null && tpMin > tpMax) {
    errors.tp_max_mbps = "throughput max must be at least throughput min";
  }

  const priority = int(fields.priority);
  if (priority === null || priority < 1) errors.priority = "priority must be an integer >= 1";

  if (Object.keys(errors).length > 0) {
    return { ok: false, errors };
  }
  return {
    ok: true,
    errors: {},
    intent: {
      sst: sst as number,
      sd: sd as number,
      delay_min_ms: delayMin as number,
      delay_max_ms: delayMax as number,
      tp_min_mbps: tpMin as number,
      tp_max_mbps: tpMax as number,
      priority: priority as number,
      label: fields.label.trim(),
    },
  };
}

export function intentFormHtml(errors: ValidationResult["errors"] = {}): string {
  const err = (key: keyof IntentFormFields) =>
    errors[key] ? `<span class="field-error" data-testid="error-${key}">${errors[key]}</span>` : "";
  const field = (key: keyof IntentFormFields, placeholder: string) =>
    `<label>${key}<input name="${key}" placeholder="${placeholder}" />${err(key)}</label>`;
  return `<form class="intent-form" data-testid="intent-form">
    ${field("sst", "1")} ${field("sd", "6")} ${field("label", "S6")}
    ${field("delay_min_ms", "10")} ${field("delay_max_ms", "50")}
    ${field("tp_min_mbps", "30")} ${field("tp_max_mbps", "250")}
    ${field("priority", "1")}
    <button type="button" data-action="preview">Preview</button>
    <button type="button" data-action="commit">Commit</button>
  </form>`;
}

export function readForm(form: HTMLFormElement): IntentFormFields {
  const value = (name: string) => (form.querySelector(`[name="${name}"]`) as HTMLInputElement).value;
  return {
    sst: value("sst"),
    sd: value("sd"),
    delay_min_ms: value("delay_min_ms"),
    delay_max_ms: value("delay_max_ms"),
    tp_min_mbps: value("tp_min_mbps"),
    tp_max_mbps: value("tp_max_mbps"),
    priority: value("priority"),
    label: value("label"),
  };
}
