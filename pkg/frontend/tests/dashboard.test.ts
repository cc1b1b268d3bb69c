import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { beforeEach, describe, expect, it } from "vitest";

import { renderDashboard, validateReport } from "../src/dashboard";
import type { BenchmarkReport } from "../src/types";

const here = dirname(fileURLToPath(import.meta.url));

function loadFixture(): BenchmarkReport {
  return JSON.parse(readFileSync(join(here, "fixtures", "report.json"), "utf-8"));
}

describe("renderDashboard", () => {
  let root: HTMLElement;

  beforeEach(() => {
    document.body.innerHTML = "";
    root = document.createElement("div");
    document.body.append(root);
  });

  it("renders 3 scope groups x 4 metric bars with error bars from the fixture", () => {
    const report = loadFixture();
    renderDashboard(root, report);

    const groups = root.querySelectorAll(".scope-group");
    expect(groups.length).toBe(3);
    expect([...groups].map((g) => (g as HTMLElement).dataset.scope)).toEqual([
      "kg",
      "vs",
      "overall",
    ]);
    for (const group of groups) {
      const cells = group.querySelectorAll(".metric-cell");
      expect(cells.length).toBe(4);
      expect(group.querySelectorAll(".error-bar").length).toBe(4);
    }
    const labels = [...groups[0].querySelectorAll(".metric-label")].map(
      (n) => n.textContent,
    );
    expect(labels).toEqual(["F", "AR", "CP", "CR"]);
  });

  it("renders bar heights and error-bar spans straight from the payload", () => {
    const report = loadFixture();
    renderDashboard(root, report);
    const modeName = [...root.querySelectorAll(".mode-button.active")][0].textContent!;
    const mode = report.modes[modeName];
    const kg = root.querySelector('[data-scope="kg"]')!;
    const bar = kg.querySelector(".bar") as HTMLElement;
    const mean = mode.scopes.kg.metrics.faithfulness!;
    expect(parseFloat(bar.style.height)).toBeCloseTo(mean * 160, 3);
    const whisker = kg.querySelector(".error-bar") as HTMLElement;
    const me = mode.bootstrap.scopes.kg.faithfulness.margin_of_error;
    expect(parseFloat(whisker.dataset.margin!)).toBeCloseTo(me, 12);
    expect(parseFloat(whisker.style.height)).toBeCloseTo(Math.min(1, 2 * me) * 160, 3);
  });

  it("zero-variance report renders zero-length error bars", () => {
    const report = loadFixture();
    for (const mode of Object.values(report.modes)) {
      for (const scope of Object.values(mode.bootstrap.scopes)) {
        for (const stat of Object.values(scope)) {
          stat.margin_of_error = 0;
          stat.std = 0;
        }
      }
    }
    renderDashboard(root, report);
    const whiskers = root.querySelectorAll(".error-bar");
    expect(whiskers.length).toBeGreaterThan(0);
    for (const w of whiskers) {
      expect(parseFloat((w as HTMLElement).style.height)).toBe(0);
    }
  });

  it("shows an empty state when no report exists", () => {
    renderDashboard(root, null);
    expect(root.querySelector(".empty-state")).not.toBeNull();
    expect(root.querySelectorAll(".scope-group").length).toBe(0);
  });

  it("shows a schema-error banner on malformed reports", () => {
    renderDashboard(root, { modes: { broken: {} } });
    expect(root.querySelector(".error-banner")).not.toBeNull();
    expect(root.querySelectorAll(".scope-group").length).toBe(0);
  });

  it("validateReport accepts the fixture and rejects junk", () => {
    expect(validateReport(loadFixture())).toBe(true);
    expect(validateReport(42)).toBe(false);
    expect(validateReport({})).toBe(false);
    expect(validateReport({ modes: { x: { scopes: {} } } })).toBe(false);
  });

  it("mode buttons switch between baseline and agentic", () => {
    const report = loadFixture();
    renderDashboard(root, report);
    const buttons = [...root.querySelectorAll(".mode-button")];
    expect(buttons.map((b) => b.textContent)).toEqual(["agentic", "baseline"]);
    (buttons[1] as HTMLButtonElement).click();
    expect(buttons[1].classList.contains("active")).toBe(true);
    expect(root.querySelectorAll(".scope-group").length).toBe(3);
  });
});
