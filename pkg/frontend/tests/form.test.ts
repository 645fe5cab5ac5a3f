import { describe, expect, test } from "vitest";

import { intentFormHtml, readForm, validateIntentForm } from "../src/form.js";
import type { IntentFormFields } from "../src/form.js";

function fields(partial: Partial<IntentFormFields> = {}): IntentFormFields {
  return {
    sst: "1",
    sd: "6",
    delay_min_ms: "10",
    delay_max_ms: "50",
    tp_min_mbps: "30",
    tp_max_mbps: "250",
    priority: "2",
    label: "S6",
    ...partial,
  };
}

describe("intent form validation mirrors the server invariants", () => {
  test("well-formed input produces a typed intent", () => {
    const result = validateIntentForm(fields());
    expect(result.ok).toBe(true);
    expect(result.intent).toEqual({
      sst: 1, sd: 6, delay_min_ms: 10, delay_max_ms: 50,
      tp_min_mbps: 30, tp_max_mbps: 250, priority: 2, label: "S6",
    });
  });

  test("delay_max below delay_min is an inline error", () => {
    const result = validateIntentForm(fields({ delay_min_ms: "60", delay_max_ms: "50" }));
    expect(result.ok).toBe(false);
    expect(result.errors.delay_max_ms).toMatch(/at least delay min/);
  });

  test("throughput band order enforced", () => {
    const result = validateIntentForm(fields({ tp_min_mbps: "300" }));
    expect(result.ok).toBe(false);
    expect(result.errors.tp_max_mbps).toBeDefined();
  });

  test("priority must be a positive integer", () => {
    expect(validateIntentForm(fields({ priority: "0" })).ok).toBe(false);
    expect(validateIntentForm(fields({ priority: "1.5" })).ok).toBe(false);
    expect(validateIntentForm(fields({ priority: "3" })).ok).toBe(true);
  });

  test("non-numeric and negative values are rejected", () => {
    expect(validateIntentForm(fields({ tp_min_mbps: "lots" })).ok).toBe(false);
    expect(validateIntentForm(fields({ delay_min_ms: "-5" })).ok).toBe(false);
    expect(validateIntentForm(fields({ sst: "" })).ok).toBe(false);
  });

  test("errors render inline next to their field", () => {
    const result = validateIntentForm(fields({ delay_min_ms: "60", delay_max_ms: "50" }));
    document.body.innerHTML = intentFormHtml(result.errors);
    const error = document.querySelector('[data-testid="error-delay_max_ms"]');
    expect(error?.textContent).toMatch(/at least delay min/);
  });

  test("readForm lifts input values", () => {
    document.body.innerHTML = intentFormHtml();
    const form = document.querySelector("form") as HTMLFormElement;
    (form.querySelector('[name="sst"]') as HTMLInputElement).value = "2";
    (form.querySelector('[name="sd"]') as HTMLInputElement).value = "7";
    const lifted = readForm(form);
    expect(lifted.sst).toBe("2");
    expect(lifted.sd).toBe("7");
  });
});
