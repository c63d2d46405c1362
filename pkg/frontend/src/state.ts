/** Client-side annotation state.
 *
 * Mirrors the server's validation rules so the UI can never produce a payload
 * the service rejects: one alignment per (summary, proposition), approx_kind
 * present exactly when the mode is approximate, indices inside the document.
 */

import type { AlignmentJson, AnnotationJson, ApproxKind, Mode, StoredAnnotation } from "./types.js";

export interface NoteState {
  mode: Mode;
  approxKind: ApproxKind | null;
  duplicateGroup: string | null;
  note: string;
  extra: Record<string, unknown>;
}

function defaultNote(): NoteState {
  return { mode: "match", approxKind: null, duplicateGroup: null, note: "", extra: {} };
}

function cellKey(summary: number, prop: number): string {
  return `${summary}:${prop}`;
}

export class AnnotationState {
  private cells = new Map<string, NoteState>();
  version = 0;
  dirty = false;

  constructor(
    readonly docId: string,
    readonly annotator: string,
    readonly summaryCount: number,
    readonly propCount: number,
    readonly schemaVersion: string = "1",
  ) {}

  private checkIndices(summary: number, prop: number): void {
    if (!Number.isInteger(summary) || summary < 0 || summary >= this.summaryCount) {
      throw new RangeError(`summary index ${summary} outside 0..${this.summaryCount - 1}`);
    }
    if (!Number.isInteger(prop) || prop < 0 || prop >= this.propCount) {
      throw new RangeError(`proposition index ${prop} outside 0..${this.propCount - 1}`);
    }
  }

  isHighlighted(summary: number, prop: number): boolean {
    return this.cells.has(cellKey(summary, prop));
  }

  note(summary: number, prop: number): NoteState | null {
    return this.cells.get(cellKey(summary, prop)) ?? null;
  }

  /** Click contract: add with default state (match), or remove and clear the note. */
  toggle(summary: number, prop: number): boolean {
    this.checkIndices(summary, prop);
    const key = cellKey(summary, prop);
    if (this.cells.has(key)) {
      this.cells.delete(key);
      this.dirty = true;
      return false;
    }
    this.cells.set(key, defaultNote());
    this.dirty = true;
    return true;
  }

  private existing(summary: number, prop: number): NoteState {
    const state = this.cells.get(cellKey(summary, prop));
    if (!state) {
      throw new Error(`proposition ${prop} is not highlighted in summary ${summary}`);
    }
    return state;
  }

  setMode(summary: number, prop: number, mode: Mode): void {
    const state = this.existing(summary, prop);
    if (state.mode === mode) return;
    state.mode = mode;
    // trigger is the default sub-kind; match never carries one
    state.approxKind = mode === "approximate" ? "trigger" : null;
    this.dirty = true;
  }

  setApproxKind(summary: number, prop: number, kind: ApproxKind): void {
    const state = this.existing(summary, prop);
    if (state.mode !== "approximate") {
      throw new Error("approx_kind is only allowed on approximate alignments");
    }
    state.approxKind = kind;
    this.dirty = true;
  }

  setDuplicateGroup(summary: number, prop: number, group: string | null): void {
    const state = this.existing(summary, prop);
    state.duplicateGroup = group && group.trim() ? group.trim() : null;
    this.dirty = true;
  }

  setNoteText(summary: number, prop: number, text: string): void {
    this.existing(summary, prop).note = text;
    this.dirty = true;
  }

  setExtra(summary: number, prop: number, key: string, value: unknown): void {
    const state = this.existing(summary, prop);
    if (value === "" || value === false || value == null) {
      delete state.extra[key];
    } else {
      state.extra[key] = value;
    }
    this.dirty = true;
  }

  highlightedProps(summary: number): number[] {
    const props: number[] = [];
    for (const key of this.cells.keys()) {
      const [s, p] = key.split(":").map(Number) as [number, number];
      if (s === summary) props.push(p);
    }
    return props.sort((a, b) => a - b);
  }

  /** Existing duplicate-group ids in one summary, for the note dialog picker. */
  groupsInSummary(summary: number): string[] {
    const groups = new Set<string>();
    for (const [key, state] of this.cells) {
      const [s] = key.split(":").map(Number);
      if (s === summary && state.duplicateGroup) groups.add(state.duplicateGroup);
    }
    return [...groups].sort();
  }

  /** Per-proposition count of summaries with an alignment (heat view). */
  countsByProp(): number[] {
    const counts = new Array<number>(this.propCount).fill(0);
    for (const key of this.cells.keys()) {
      const [, p] = key.split(":").map(Number) as [number, number];
      counts[p] = (counts[p] ?? 0) + 1;
    }
    return counts;
  }

  alignmentCount(): number {
    return this.cells.size;
  }

  /** Canonical annotation payload: alignments sorted by (summary, prop). */
  toAnnotation(): AnnotationJson {
    const alignments: AlignmentJson[] = [];
    const keys = [...this.cells.keys()].sort((a, b) => {
      const [sa, pa] = a.split(":").map(Number) as [number, number];
      const [sb, pb] = b.split(":").map(Number) as [number, number];
      return sa - sb || pa - pb;
    });
    for (const key of keys) {
      const [summary, prop] = key.split(":").map(Number) as [number, number];
      const state = this.cells.get(key)!;
      const alignment: AlignmentJson = { summary, prop, mode: state.mode };
      if (state.mode === "approximate") {
        alignment.approx_kind = state.approxKind ?? "trigger";
      }
      if (state.duplicateGroup) alignment.duplicate_group = state.duplicateGroup;
      if (state.note.trim()) alignment.note = state.note;
      if (Object.keys(state.extra).length > 0) alignment.extra = { ...state.extra };
      alignments.push(alignment);
    }
    return {
      doc_id: this.docId,
      annotator: this.annotator,
      schema_version: this.schemaVersion,
      alignments,
    };
  }

  /** Replace local contents with a stored annotation from the server. */
  loadFrom(stored: StoredAnnotation): void {
    const cells = new Map<string, NoteState>();
    for (const alignment of stored.annotation.alignments) {
      this.checkIndices(alignment.summary, alignment.prop);
      const key = cellKey(alignment.summary, alignment.prop);
      if (cells.has(key)) {
        throw new Error(`duplicate alignment for summary ${alignment.summary}, prop ${alignment.prop}`);
      }
      if (alignment.mode === "approximate") {
        if (alignment.approx_kind !== "trigger" && alignment.approx_kind !== "component") {
          throw new Error("approximate alignment without a valid approx_kind");
        }
      } else if (alignment.approx_kind) {
        throw new Error("approx_kind on a non-approximate alignment");
      }
      cells.set(key, {
        mode: alignment.mode,
        approxKind: alignment.mode === "approximate" ? alignment.approx_kind! : null,
        duplicateGroup: alignment.duplicate_group ?? null,
        note: alignment.note ?? "",
        extra: { ...(alignment.extra ?? {}) },
      });
    }
    this.cells = cells;
    this.version = stored.version;
    this.dirty = false;
  }
}
