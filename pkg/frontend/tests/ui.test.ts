// @vitest-environment jsdom
import { beforeEach, describe, expect, it, vi } from "vitest";

import type { ApiClient } from "../src/api.js";
import { App } from "../src/ui.js";
import type { DocumentPayload, SchemaJson, StoredAnnotation } from "../src/types.js";

const DOC: DocumentPayload = {
  doc_id: "toy",
  genre: "test",
  tokens: ["The", "boy", "who", "laughed", "fell", "asleep", "soundly", "."],
  sentences: [[0, 8]],
  propositions: [
    { index: 0, token_ranges: [[0, 2], [4, 6]], text: "The boy fell asleep" },
    { index: 1, token_ranges: [[2, 4]], text: "who laughed" },
    { index: 2, token_ranges: [[6, 8]], text: "soundly ." },
  ],
  summaries: ["summary one", "summary two"],
};

const SCHEMA: SchemaJson = {
  version: "1",
  fields: [{ key: "uncertain", label: "Uncertain", kind: "checkbox" }],
};

function fakeClient(): ApiClient {
  const stored: StoredAnnotation = {
    version: 0,
    updated_at: null,
    annotation: { doc_id: "toy", annotator: "t", schema_version: "1", alignments: [] },
  };
  return {
    document: vi.fn(async () => DOC),
    schema: vi.fn(async () => SCHEMA),
    annotation: vi.fn(async () => stored),
    save: vi.fn(async () => ({ version: 1 })),
    documents: vi.fn(async () => ({ documents: [] })),
  } as unknown as ApiClient;
}

function spansFor(root: HTMLElement, prop: number): HTMLElement[] {
  return [...root.querySelectorAll<HTMLElement>(`.prop-span[data-prop="${prop}"]`)];
}

describe("document rendering", () => {
  let root: HTMLElement;
  let app: App;

  beforeEach(async () => {
    document.body.innerHTML = "<div id='root'></div>";
    root = document.getElementById("root")!;
    app = new App(root, fakeClient());
    await app.load("toy", "tester");
  });

  it("shows summaries as tabs plus the heat view", () => {
    expect(root.querySelectorAll(".summary-tab")).toHaveLength(2);
    expect(root.querySelectorAll(".heat-tab")).toHaveLength(1);
    expect(root.querySelector(".summary-text")!.textContent).toBe("summary one");
  });

  it("renders proposition parts in document order", () => {
    const spans = [...root.querySelectorAll<HTMLElement>(".prop-span")];
    expect(spans.map((s) => s.dataset.prop)).toEqual(["0", "1", "0", "2"]);
    expect(spans.map((s) => s.textContent)).toEqual([
      "The boy",
      "who laughed",
      "fell asleep",
      "soundly .",
    ]);
  });

  it("highlights all parts of a discontinuous proposition from one click", () => {
    spansFor(root, 0)[0]!.click();
    const parts = spansFor(root, 0);
    expect(parts).toHaveLength(2);
    expect(parts.every((s) => s.classList.contains("highlighted"))).toBe(true);
    expect(spansFor(root, 1)[0]!.classList.contains("highlighted")).toBe(false);
  });

  it("toggles off and clears the note on the second click", () => {
    spansFor(root, 2)[0]!.click();
    app.state!.setNoteText(0, 2, "gone soon");
    spansFor(root, 2)[0]!.click();
    expect(app.state!.isHighlighted(0, 2)).toBe(false);
    spansFor(root, 2)[0]!.click();
    expect(app.state!.note(0, 2)!.note).toBe("");
  });

  it("keeps highlights per summary when switching tabs", () => {
    spansFor(root, 0)[0]!.click();
    const tabs = root.querySelectorAll<HTMLElement>(".summary-tab");
    tabs[1]!.click();
    expect(spansFor(root, 0)[0]!.classList.contains("highlighted")).toBe(false);
    spansFor(root, 2)[0]!.click();
    root.querySelectorAll<HTMLElement>(".summary-tab")[0]!.click();
    expect(spansFor(root, 0)[0]!.classList.contains("highlighted")).toBe(true);
    expect(spansFor(root, 2)[0]!.classList.contains("highlighted")).toBe(false);
    expect(app.state!.highlightedProps(1)).toEqual([2]);
  });

  it("disables the component/trigger picker for match alignments", () => {
    spansFor(root, 1)[0]!.click();
    root.querySelector<HTMLElement>(".note-btn[data-prop='1']")!.click();
    const kind = root.querySelector<HTMLSelectElement>(".approx-kind")!;
    expect(kind.disabled).toBe(true);
    const radios = [...root.querySelectorAll<HTMLInputElement>("input[name='mode']")];
    radios.find((r) => r.value === "approximate")!.click();
    const enabledKind = root.querySelector<HTMLSelectElement>(".approx-kind")!;
    expect(enabledKind.disabled).toBe(false);
    expect(app.state!.note(0, 1)!.approxKind).toBe("trigger");
  });

  it("shows schema-driven custom fields in the dialog", () => {
    spansFor(root, 1)[0]!.click();
    root.querySelector<HTMLElement>(".note-btn[data-prop='1']")!.click();
    const box = root.querySelector<HTMLInputElement>(".custom-field input[data-key='uncertain']")!;
    expect(box.type).toBe("checkbox");
    box.click();
    expect(app.state!.note(0, 1)!.extra["uncertain"]).toBe(true);
  });

  it("supports keyboard toggling and summary switching", () => {
    const press = (key: string) =>
      root.dispatchEvent(new KeyboardEvent("keydown", { key, bubbles: true }));
    press("j"); // focus prop 1
    press(" "); // toggle it
    expect(app.state!.isHighlighted(0, 1)).toBe(true);
    press("2"); // switch to the second summary
    expect(app.activeSummary).toBe(1);
  });

  it("tints spans by alignment counts in the heat view", () => {
    spansFor(root, 0)[0]!.click();
    root.querySelectorAll<HTMLElement>(".summary-tab")[1]!.click();
    spansFor(root, 0)[0]!.click();
    root.querySelector<HTMLElement>(".heat-tab")!.click();
    const heatSpan = spansFor(root, 0)[0]!;
    expect(heatSpan.classList.contains("heat")).toBe(true);
    expect(heatSpan.style.backgroundColor).not.toBe("");
    // read-only: clicking in heat view changes nothing
    heatSpan.click();
    expect(app.state!.alignmentCount()).toBe(2);
  });
});
