import { describe, expect, it } from "vitest";

import { AnnotationState } from "../src/state.js";
import type { StoredAnnotation } from "../src/types.js";

function freshState(): AnnotationState {
  return new AnnotationState("doc", "ann", 5, 10);
}

describe("highlight toggling", () => {
  it("adds a default match alignment on first click", () => {
    const state = freshState();
    expect(state.toggle(0, 3)).toBe(true);
    expect(state.isHighlighted(0, 3)).toBe(true);
    expect(state.note(0, 3)).toEqual({
      mode: "match",
      approxKind: null,
      duplicateGroup: null,
      note: "",
      extra: {},
    });
    expect(state.dirty).toBe(true);
  });

  it("removes the alignment and clears its note on second click", () => {
    const state = freshState();
    state.toggle(0, 3);
    state.setNoteText(0, 3, "something");
    expect(state.toggle(0, 3)).toBe(false);
    expect(state.isHighlighted(0, 3)).toBe(false);
    state.toggle(0, 3);
    expect(state.note(0, 3)!.note).toBe("");
  });

  it("keeps per-summary highlight sets independent", () => {
    const state = freshState();
    state.toggle(0, 1);
    state.toggle(1, 2);
    expect(state.highlightedProps(0)).toEqual([1]);
    expect(state.highlightedProps(1)).toEqual([2]);
  });

  it("rejects out-of-range indices", () => {
    const state = freshState();
    expect(() => state.toggle(5, 0)).toThrow(RangeError);
    expect(() => state.toggle(0, 10)).toThrow(RangeError);
  });
});

describe("note editing", () => {
  it("approximate defaults to trigger, match clears the kind", () => {
    const state = freshState();
    state.toggle(0, 1);
    state.setMode(0, 1, "approximate");
    expect(state.note(0, 1)!.approxKind).toBe("trigger");
    state.setApproxKind(0, 1, "component");
    expect(state.note(0, 1)!.approxKind).toBe("component");
    state.setMode(0, 1, "match");
    expect(state.note(0, 1)!.approxKind).toBeNull();
  });

  it("refuses an approx kind on a match alignment", () => {
    const state = freshState();
    state.toggle(0, 1);
    expect(() => state.setApproxKind(0, 1, "component")).toThrow();
  });

  it("refuses notes on unhighlighted propositions", () => {
    const state = freshState();
    expect(() => state.setMode(0, 1, "approximate")).toThrow();
  });

  it("tracks duplicate groups per summary", () => {
    const state = freshState();
    state.toggle(0, 1);
    state.toggle(0, 2);
    state.setDuplicateGroup(0, 1, "g1");
    state.setDuplicateGroup(0, 2, "g1");
    expect(state.groupsInSummary(0)).toEqual(["g1"]);
    expect(state.groupsInSummary(1)).toEqual([]);
  });
});

describe("canonical payload", () => {
  it("sorts alignments by (summary, prop) and omits empty optionals", () => {
    const state = freshState();
    state.toggle(2, 0);
    state.toggle(0, 5);
    state.toggle(0, 1);
    state.setMode(0, 5, "approximate");
    state.setApproxKind(0, 5, "component");
    state.setDuplicateGroup(0, 1, "g1");
    const annotation = state.toAnnotation();
    expect(annotation.alignments.map((a) => [a.summary, a.prop])).toEqual([
      [0, 1],
      [0, 5],
      [2, 0],
    ]);
    expect(annotation.alignments[0]).toEqual({
      summary: 0,
      prop: 1,
      mode: "match",
      duplicate_group: "g1",
    });
    expect(annotation.alignments[1]).toEqual({
      summary: 0,
      prop: 5,
      mode: "approximate",
      approx_kind: "component",
    });
    expect(annotation.alignments[2]).toEqual({ summary: 2, prop: 0, mode: "match" });
  });

  it("round-trips through loadFrom", () => {
    const state = freshState();
    state.toggle(1, 3);
    state.setMode(1, 3, "approximate");
    state.setApproxKind(1, 3, "trigger");
    state.setNoteText(1, 3, "a note");
    state.setExtra(1, 3, "uncertain", true);
    const stored: StoredAnnotation = {
      version: 7,
      updated_at: "now",
      annotation: state.toAnnotation(),
    };
    const other = freshState();
    other.loadFrom(stored);
    expect(other.version).toBe(7);
    expect(other.dirty).toBe(false);
    expect(other.toAnnotation()).toEqual(state.toAnnotation());
  });

  it("rejects payloads the server would reject", () => {
    const state = freshState();
    const bad = (alignments: unknown): StoredAnnotation =>
      ({
        version: 1,
        updated_at: null,
        annotation: { doc_id: "doc", annotator: "ann", schema_version: "1", alignments },
      }) as StoredAnnotation;
    expect(() =>
      state.loadFrom(bad([{ summary: 0, prop: 1, mode: "match", approx_kind: "component" }])),
    ).toThrow();
    expect(() => state.loadFrom(bad([{ summary: 0, prop: 1, mode: "approximate" }]))).toThrow();
    expect(() =>
      state.loadFrom(
        bad([
          { summary: 0, prop: 1, mode: "match" },
          { summary: 0, prop: 1, mode: "match" },
        ]),
      ),
    ).toThrow();
    expect(() => state.loadFrom(bad([{ summary: 0, prop: 99, mode: "match" }]))).toThrow(
      RangeError,
    );
  });
});

describe("heat counts", () => {
  it("counts summaries per proposition", () => {
    const state = freshState();
    state.toggle(0, 1);
    state.toggle(1, 1);
    state.toggle(2, 1);
    state.toggle(0, 4);
    expect(state.countsByProp()[1]).toBe(3);
    expect(state.countsByProp()[4]).toBe(1);
    expect(state.countsByProp()[0]).toBe(0);
  });
});
